#include <algorithm>
#include <bit>
#include <cstring>
#include <filesystem>
#include <span>

#include <json.hpp>

#include "memsuite/core/error.hpp"
#include "memsuite/dataset/dataset.hpp"
#include "io.hpp"

namespace memsuite::dataset {

using nlohmann::json;

std::size_t field_spec::item_bytes() const {
    std::size_t n = dtype == "float64" ? 8 : dtype == "float32" ? 4 : 1;
    for (int d : shape) n *= static_cast<std::size_t>(d);
    return n;
}

std::vector<field_spec> standard_schema(int proprio_dim, int action_dim) {
    return {
        {"rgb", "uint8", {128, 128, 6}},
        {"proprio", "float32", {proprio_dim}},
        {"action", "float32", {action_dim}},
        {"reward", "float64", {}},
        {"success", "uint8", {}},
        {"done", "uint8", {}},
    };
}

namespace detail {

std::uint64_t trajectory_bytes(const std::vector<field_spec>& schema, int length) {
    std::uint64_t n = 0;
    for (const auto& f : schema) n += f.item_bytes() * static_cast<std::uint64_t>(length);
    return n;
}

void assign_offsets(header& h) {
    std::uint64_t at = 0;
    for (auto& e : h.trajectories) {
        e.offset = at;
        at += trajectory_bytes(h.schema, e.length);
    }
    h.payload_bytes = at;
}

std::string encode_header(const header& h) {
    json j;
    j["format"] = "MIKD";
    j["task_id"] = h.task_id;
    j["group"] = h.group;
    j["mode"] = h.mode;
    j["reward_mode"] = std::string(reward_mode_name(h.reward));
    j["observation_mode"] = "rgb";
    j["proprio_dim"] = h.proprio_dim;
    j["proprio_fields"] = {"x", "y", "theta", "grip", "vx", "vy", "omega", "grip_rate"};
    j["action_dim"] = h.action_dim;
    j["oracle_version"] = h.oracle;
    json schema = json::array();
    for (const auto& f : h.schema)
        schema.push_back({{"name", f.name}, {"dtype", f.dtype}, {"shape", f.shape}});
    j["schema"] = schema;
    json trajs = json::array();
    for (const auto& e : h.trajectories) {
        json t = {{"seed", e.seed}, {"length", e.length}, {"offset", e.offset}};
        if (!e.prompt.empty()) t["prompt"] = e.prompt;
        trajs.push_back(std::move(t));
    }
    j["trajectories"] = trajs;
    j["seed_range"] = {h.seed_first, h.seed_last};
    j["discarded_seeds"] = h.discarded_seeds;
    j["payload_bytes"] = h.payload_bytes;
    return j.dump();
}

header decode_header(const std::string& text) {
    header h;
    try {
        const json j = json::parse(text);
        if (j.at("format").get<std::string>() != "MIKD") throw error(errc::schema_mismatch, "format tag");
        h.task_id = j.at("task_id").get<std::string>();
        h.group = j.at("group").get<std::string>();
        h.mode = j.at("mode").get<std::string>();
        const auto rm = parse_reward_mode(j.at("reward_mode").get<std::string>());
        if (!rm) throw error(errc::schema_mismatch, "unknown reward_mode");
        h.reward = *rm;
        h.proprio_dim = j.at("proprio_dim").get<int>();
        h.action_dim = j.at("action_dim").get<int>();
        h.oracle = j.at("oracle_version").get<int>();
        for (const auto& f : j.at("schema"))
            h.schema.push_back({f.at("name").get<std::string>(), f.at("dtype").get<std::string>(),
                                f.at("shape").get<std::vector<int>>()});
        for (const auto& t : j.at("trajectories")) {
            trajectory_entry e;
            e.seed = t.at("seed").get<std::uint64_t>();
            e.length = t.at("length").get<int>();
            e.offset = t.at("offset").get<std::uint64_t>();
            if (t.contains("prompt")) e.prompt = t.at("prompt").get<std::vector<float>>();
            h.trajectories.push_back(std::move(e));
        }
        const auto range = j.at("seed_range").get<std::vector<std::uint64_t>>();
        if (range.size() != 2) throw error(errc::schema_mismatch, "seed_range must have two entries");
        h.seed_first = range[0];
        h.seed_last = range[1];
        h.discarded_seeds = j.at("discarded_seeds").get<std::vector<std::uint64_t>>();
        h.payload_bytes = j.at("payload_bytes").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw error(errc::schema_mismatch, std::string("header: ") + e.what());
    }
    if (h.proprio_dim < 1 || h.action_dim < 1 || h.schema != standard_schema(h.proprio_dim, h.action_dim))
        throw error(errc::schema_mismatch, "unexpected field schema");
    for (const auto& e : h.trajectories)
        if (e.length < 0) throw error(errc::schema_mismatch, "negative trajectory length");
    return h;
}

template <class T>
void put(std::ostream& out, std::span<const T> values) {
    if constexpr (std::endian::native == std::endian::little || sizeof(T) == 1) {
        out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size_bytes()));
    } else {
        std::vector<char> buf(values.size_bytes());
        for (std::size_t i = 0; i < values.size(); ++i) {
            const char* p = reinterpret_cast<const char*>(&values[i]);
            for (std::size_t b = 0; b < sizeof(T); ++b) buf[i * sizeof(T) + b] = p[sizeof(T) - 1 - b];
        }
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
}

template <class T>
void get(std::istream& in, std::span<T> values) {
    in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size_bytes()));
    if (!in) throw error(errc::truncated_payload, "payload ends early");
    if constexpr (std::endian::native != std::endian::little && sizeof(T) > 1) {
        for (auto& v : values) {
            char* p = reinterpret_cast<char*>(&v);
            std::reverse(p, p + sizeof(T));
        }
    }
}

void write_preamble(std::ostream& out, const header& h) {
    const std::string text = encode_header(h);
    out.write(magic, 4);
    const std::uint32_t version = format_version;
    const std::uint64_t len = text.size();
    put(out, std::span<const std::uint32_t>(&version, 1));
    put(out, std::span<const std::uint64_t>(&len, 1));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

void write_trajectory(std::ostream& out, const header& h, const trajectory& t) {
    const auto n = static_cast<std::size_t>(t.length);
    if (t.rgb.size() != n * 128 * 128 * 6 || t.proprio.size() != n * static_cast<std::size_t>(h.proprio_dim) ||
        t.action.size() != n * static_cast<std::size_t>(h.action_dim) || t.reward.size() != n ||
        t.success.size() != n || t.done.size() != n)
        throw error(errc::schema_mismatch, "trajectory arrays disagree with its length");
    put(out, std::span<const std::uint8_t>(t.rgb));
    put(out, std::span<const float>(t.proprio));
    put(out, std::span<const float>(t.action));
    put(out, std::span<const double>(t.reward));
    put(out, std::span<const std::uint8_t>(t.success));
    put(out, std::span<const std::uint8_t>(t.done));
}

}  // namespace detail

void write(const std::string& path, header h, const std::vector<trajectory>& trajs) {
    h.schema = standard_schema(h.proprio_dim, h.action_dim);
    h.trajectories.clear();
    for (const auto& t : trajs) h.trajectories.push_back({t.seed, t.length, 0, t.prompt});
    detail::assign_offsets(h);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    detail::write_preamble(out, h);
    for (const auto& t : trajs) detail::write_trajectory(out, h, t);
    if (!out.flush()) throw std::runtime_error("write failed for " + path);
}

reader::reader(const std::string& path) : in_(path, std::ios::binary) {
    if (!in_) throw std::runtime_error("cannot open " + path);
    char m[4] = {};
    in_.read(m, 4);
    if (!in_ || std::memcmp(m, magic, 4) != 0) throw error(errc::bad_magic, path + " is not a MIKD file");
    std::uint32_t version = 0;
    std::uint64_t len = 0;
    detail::get(in_, std::span<std::uint32_t>(&version, 1));
    if (version != format_version)
        throw error(errc::schema_mismatch, "unsupported format version " + std::to_string(version));
    detail::get(in_, std::span<std::uint64_t>(&len, 1));
    const auto file_size = std::filesystem::file_size(path);
    if (len > file_size) throw error(errc::truncated_payload, "header length exceeds file size");
    std::string text(len, '\0');
    in_.read(text.data(), static_cast<std::streamsize>(len));
    if (!in_) throw error(errc::truncated_payload, "header ends early");
    h_ = detail::decode_header(text);
    payload_start_ = 16 + len;
    if (file_size < payload_start_ + h_.payload_bytes)
        throw error(errc::truncated_payload, "file holds " + std::to_string(file_size - payload_start_) +
                                                 " payload bytes, header declares " +
                                                 std::to_string(h_.payload_bytes));
}

trajectory reader::read(std::size_t index) {
    const trajectory_entry& e = h_.trajectories.at(index);
    const auto n = static_cast<std::size_t>(e.length);
    if (e.offset + detail::trajectory_bytes(h_.schema, e.length) > h_.payload_bytes)
        throw error(errc::truncated_payload, "trajectory " + std::to_string(index) + " extends past the payload");
    trajectory t;
    t.seed = e.seed;
    t.length = e.length;
    t.prompt = e.prompt;
    t.rgb.resize(n * 128 * 128 * 6);
    t.proprio.resize(n * static_cast<std::size_t>(h_.proprio_dim));
    t.action.resize(n * static_cast<std::size_t>(h_.action_dim));
    t.reward.resize(n);
    t.success.resize(n);
    t.done.resize(n);
    in_.clear();
    in_.seekg(static_cast<std::streamoff>(payload_start_ + e.offset));
    detail::get(in_, std::span<std::uint8_t>(t.rgb));
    detail::get(in_, std::span<float>(t.proprio));
    detail::get(in_, std::span<float>(t.action));
    detail::get(in_, std::span<double>(t.reward));
    detail::get(in_, std::span<std::uint8_t>(t.success));
    detail::get(in_, std::span<std::uint8_t>(t.done));
    return t;
}

}  // namespace memsuite::dataset
