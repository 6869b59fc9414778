#include "memsuite/core/types.hpp"

#include <cstring>

namespace memsuite {

std::string memory_types_string(unsigned mask) {
    std::string out;
    auto add = [&](memory_type t, const char* name) {
        if (mask & static_cast<unsigned>(t)) {
            if (!out.empty()) out += ",";
            out += name;
        }
    };
    add(memory_type::object, "Object");
    add(memory_type::spatial, "Spatial");
    add(memory_type::sequential, "Sequential");
    add(memory_type::capacity, "Capacity");
    return out;
}

std::string_view observation_mode_name(observation_mode m) noexcept {
    switch (m) {
        case observation_mode::state: return "state";
        case observation_mode::masked: return "masked";
        case observation_mode::rgb: return "rgb";
        case observation_mode::masked_rgb: return "masked+rgb";
    }
    return "?";
}

std::optional<observation_mode> parse_observation_mode(std::string_view s) noexcept {
    if (s == "state") return observation_mode::state;
    if (s == "masked") return observation_mode::masked;
    if (s == "rgb") return observation_mode::rgb;
    if (s == "masked+rgb" || s == "masked_rgb") return observation_mode::masked_rgb;
    return std::nullopt;
}

std::string_view reward_mode_name(reward_mode m) noexcept {
    return m == reward_mode::sparse ? "sparse" : "dense";
}

std::optional<reward_mode> parse_reward_mode(std::string_view s) noexcept {
    if (s == "sparse") return reward_mode::sparse;
    if (s == "dense") return reward_mode::dense;
    return std::nullopt;
}

int layout_size(const vector_layout& layout) noexcept {
    int n = 0;
    for (const auto& f : layout) n += f.size;
    return n;
}

bool bitwise_equal(const step_result& a, const step_result& b) noexcept {
    auto same_bytes = [](const auto& x, const auto& y) {
        return x.size() == y.size() &&
               (x.empty() || std::memcmp(x.data(), y.data(), x.size() * sizeof(x[0])) == 0);
    };
    return same_bytes(a.observation, b.observation) && same_bytes(a.raster, b.raster) &&
           std::memcmp(&a.reward, &b.reward, sizeof(double)) == 0 && a.terminated == b.terminated &&
           a.truncated == b.truncated && a.info.success == b.info.success && a.info.phase == b.info.phase &&
           same_bytes(a.info.oracle, b.info.oracle) && same_bytes(a.info.prompt, b.info.prompt) &&
           a.info.elapsed_steps == b.info.elapsed_steps;
}

}  // namespace memsuite
