#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "memsuite/core/space.hpp"

namespace memsuite {

enum class memory_type : unsigned { object = 1, spatial = 2, sequential = 4, capacity = 8 };

std::string memory_types_string(unsigned mask);

enum class phase_id : std::uint8_t { observation, delay, selection, action };

constexpr std::string_view phase_name(phase_id p) noexcept {
    switch (p) {
        case phase_id::observation: return "Observation";
        case phase_id::delay: return "Delay";
        case phase_id::selection: return "Selection";
        case phase_id::action: return "Action";
    }
    return "?";
}

enum class observation_mode { state, masked, rgb, masked_rgb };

std::string_view observation_mode_name(observation_mode m) noexcept;
std::optional<observation_mode> parse_observation_mode(std::string_view s) noexcept;

enum class reward_mode { sparse, dense };

std::string_view reward_mode_name(reward_mode m) noexcept;
std::optional<reward_mode> parse_reward_mode(std::string_view s) noexcept;

enum class suite { diagnostic, tabletop };

/// One named segment of a flat vector (oracle info, prompt, observation layout).
struct vector_field {
    std::string name;
    int size = 1;

    friend bool operator==(const vector_field&, const vector_field&) = default;
};

using vector_layout = std::vector<vector_field>;

int layout_size(const vector_layout& layout) noexcept;

/// Static description of a task instance. For tabletop tasks the timeout
/// column reproduces the published table; diagnostic defaults that have no
/// published value are listed in `notes`.
struct task_meta {
    std::string task_id;  // full id, e.g. "ShellGameTouch"
    std::string group;    // e.g. "ShellGame"
    std::string mode;     // e.g. "Touch"
    memsuite::suite suite = suite::diagnostic;
    unsigned memory_types = 0;
    int correlation_horizon = 2;
    int timeout = 1;
    std::vector<std::string> modes;
    vector_layout oracle_info_schema;
    vector_layout prompt_schema;
    std::vector<reward_mode> reward_modes;
    std::vector<observation_mode> observation_modes;
    double gamma = 0.99;  // carried as metadata only
    std::vector<std::string> notes;
};

using task_params = std::map<std::string, double>;

struct env_config {
    std::string task_id;
    std::string mode;  // empty: deduced from the id or the task's first mode
    observation_mode obs_mode = observation_mode::state;
    std::optional<memsuite::reward_mode> reward;  // empty: the task's first reward mode
    std::uint64_t seed = 0;
    task_params params;
};

struct step_info {
    bool success = false;
    phase_id phase = phase_id::action;
    std::vector<float> oracle;  // populated in state mode only
    std::vector<float> prompt;
    int elapsed_steps = 0;
};

struct step_result {
    std::vector<float> observation;
    std::vector<std::uint8_t> raster;  // H x W x 6, rgb modes only
    double reward = 0.0;
    bool terminated = false;
    bool truncated = false;
    step_info info;

    [[nodiscard]] bool done() const noexcept { return terminated || truncated; }
};

/// Byte-level equality, used by the determinism checks.
bool bitwise_equal(const step_result& a, const step_result& b) noexcept;

}  // namespace memsuite
