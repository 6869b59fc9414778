#include <array>
#include <cmath>

#include "memsuite/core/error.hpp"
#include "memsuite/harness/wire.hpp"

namespace memsuite::harness {

namespace {

constexpr char alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

json encode_space(const space_spec& s) {
    json j;
    j["dtype"] = std::string(dtype_name(s.dtype));
    if (s.is_discrete()) {
        j["kind"] = "discrete";
        j["n"] = s.n;
    } else {
        j["kind"] = "box";
        j["shape"] = s.shape;
        j["low"] = s.low;
        j["high"] = s.high;
    }
    return j;
}

json encode_layout(const vector_layout& l) {
    json j = json::array();
    for (const auto& f : l) j.push_back({{"name", f.name}, {"size", f.size}});
    return j;
}

phase_id parse_phase(const std::string& s) {
    for (phase_id p : {phase_id::observation, phase_id::delay, phase_id::selection, phase_id::action})
        if (phase_name(p) == s) return p;
    throw error(errc::bad_request, "unknown phase '" + s + "'");
}

}  // namespace

std::string base64_encode(std::span<const std::uint8_t> bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 2 < bytes.size(); i += 3) {
        const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out.push_back(alphabet[(v >> 6) & 63]);
        out.push_back(alphabet[v & 63]);
    }
    if (const std::size_t rest = bytes.size() - i; rest > 0) {
        const std::uint32_t v = (bytes[i] << 16) | (rest == 2 ? bytes[i + 1] << 8 : 0);
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out.push_back(rest == 2 ? alphabet[(v >> 6) & 63] : '=');
        out.push_back('=');
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
    static const auto table = [] {
        std::array<int, 256> t{};
        t.fill(-1);
        for (int i = 0; i < 64; ++i) t[static_cast<unsigned char>(alphabet[i])] = i;
        return t;
    }();
    if (text.size() % 4 != 0) throw error(errc::bad_request, "base64 length is not a multiple of 4");
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        int v[4];
        int pad = 0;
        for (int k = 0; k < 4; ++k) {
            const char c = text[i + k];
            if (c == '=' && i + 4 == text.size() && k >= 2) {
                v[k] = 0;
                ++pad;
            } else if (pad > 0 || (v[k] = table[static_cast<unsigned char>(c)]) < 0) {
                throw error(errc::bad_request, "invalid base64");
            }
        }
        const std::uint32_t w = (v[0] << 18) | (v[1] << 12) | (v[2] << 6) | v[3];
        out.push_back(static_cast<std::uint8_t>(w >> 16));
        if (pad < 2) out.push_back(static_cast<std::uint8_t>(w >> 8));
        if (pad < 1) out.push_back(static_cast<std::uint8_t>(w));
    }
    return out;
}

json encode_specs(const env_specs& s) {
    const task_meta& m = s.meta;
    json j;
    j["observation"] = encode_space(s.observation);
    j["action"] = encode_space(s.action);
    j["raster"] = s.raster ? encode_space(*s.raster) : json(nullptr);
    json rm = json::array(), om = json::array();
    for (auto r : m.reward_modes) rm.push_back(std::string(reward_mode_name(r)));
    for (auto o : m.observation_modes) om.push_back(std::string(observation_mode_name(o)));
    j["meta"] = {
        {"task_id", m.task_id},
        {"group", m.group},
        {"mode", m.mode},
        {"suite", m.suite == suite::tabletop ? "tabletop" : "diagnostic"},
        {"memory_type", memory_types_string(m.memory_types)},
        {"correlation_horizon", m.correlation_horizon},
        {"timeout", m.timeout},
        {"modes", m.modes},
        {"oracle_info_schema", encode_layout(m.oracle_info_schema)},
        {"prompt_schema", encode_layout(m.prompt_schema)},
        {"reward_modes", rm},
        {"observation_modes", om},
        {"gamma", m.gamma},
        {"notes", m.notes},
    };
    return j;
}

json encode_step(const step_result& r) {
    json j;
    j["observation"] = r.observation;
    j["reward"] = r.reward;
    j["terminated"] = r.terminated;
    j["truncated"] = r.truncated;
    j["info"] = {
        {"success", r.info.success},
        {"phase", std::string(phase_name(r.info.phase))},
        {"oracle", r.info.oracle},
        {"prompt", r.info.prompt},
        {"elapsed_steps", r.info.elapsed_steps},
    };
    if (!r.raster.empty())
        j["raster"] = {{"shape", {128, 128, 6}}, {"dtype", "uint8"}, {"data", base64_encode(r.raster)}};
    return j;
}

step_result decode_step(const json& j) {
    step_result r;
    try {
        r.observation = j.at("observation").get<std::vector<float>>();
        r.reward = j.at("reward").get<double>();
        r.terminated = j.at("terminated").get<bool>();
        r.truncated = j.at("truncated").get<bool>();
        const json& info = j.at("info");
        r.info.success = info.at("success").get<bool>();
        r.info.phase = parse_phase(info.at("phase").get<std::string>());
        r.info.oracle = info.at("oracle").get<std::vector<float>>();
        r.info.prompt = info.at("prompt").get<std::vector<float>>();
        r.info.elapsed_steps = info.at("elapsed_steps").get<int>();
        if (j.contains("raster")) {
            const json& ras = j.at("raster");
            std::size_t n = 1;
            for (int d : ras.at("shape").get<std::vector<int>>()) n *= static_cast<std::size_t>(d);
            r.raster = base64_decode(ras.at("data").get<std::string>());
            if (r.raster.size() != n) throw error(errc::bad_request, "raster size disagrees with its shape");
        }
    } catch (const json::exception& e) {
        throw error(errc::bad_request, std::string("malformed step result: ") + e.what());
    }
    return r;
}

env_config decode_config(const json& p) {
    env_config c;
    try {
        if (!p.is_object()) throw error(errc::bad_request, "make payload must be an object");
        c.task_id = p.at("task_id").get<std::string>();
        c.mode = p.value("mode", std::string());
        if (p.contains("obs_mode")) {
            const auto m = parse_observation_mode(p.at("obs_mode").get<std::string>());
            if (!m) throw error(errc::invalid_mode, "unknown observation mode");
            c.obs_mode = *m;
        }
        if (p.contains("reward_mode")) {
            const auto m = parse_reward_mode(p.at("reward_mode").get<std::string>());
            if (!m) throw error(errc::invalid_mode, "unknown reward mode");
            c.reward = *m;
        }
        c.seed = p.value("seed", std::uint64_t{0});
        if (p.contains("params"))
            for (const auto& [k, v] : p.at("params").items()) c.params[k] = v.get<double>();
    } catch (const json::exception& e) {
        throw error(errc::bad_request, std::string("malformed make payload: ") + e.what());
    }
    return c;
}

}  // namespace memsuite::harness
