#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "memsuite/core/types.hpp"

namespace memsuite::dataset {

inline constexpr char magic[4] = {'M', 'I', 'K', 'D'};
inline constexpr std::uint32_t format_version = 1;
inline constexpr int oracle_version = 1;

/// One episode. Index i holds the observation before action i and the outcome
/// of applying it, so every field has length T = number of steps.
struct trajectory {
    std::uint64_t seed = 0;
    int length = 0;
    std::vector<std::uint8_t> rgb;   // T x 128 x 128 x 6
    std::vector<float> proprio;      // T x P
    std::vector<float> action;       // T x A
    std::vector<double> reward;      // T
    std::vector<std::uint8_t> success;
    std::vector<std::uint8_t> done;
    std::vector<float> prompt;       // constant per episode; empty for most tasks

    friend bool operator==(const trajectory&, const trajectory&) = default;
};

struct field_spec {
    std::string name;
    std::string dtype;  // "uint8", "float32" or "float64"
    std::vector<int> shape;  // per-step shape

    [[nodiscard]] std::size_t item_bytes() const;
    friend bool operator==(const field_spec&, const field_spec&) = default;
};

struct trajectory_entry {
    std::uint64_t seed = 0;
    int length = 0;
    std::uint64_t offset = 0;  // from the start of the payload
    std::vector<float> prompt;
};

struct header {
    std::string task_id;
    std::string group;
    std::string mode;
    memsuite::reward_mode reward = reward_mode::dense;
    int proprio_dim = 0;
    int action_dim = 0;
    std::vector<field_spec> schema;
    std::vector<trajectory_entry> trajectories;
    std::uint64_t seed_first = 0;
    std::uint64_t seed_last = 0;  // inclusive; covers discarded seeds
    std::vector<std::uint64_t> discarded_seeds;
    std::uint64_t payload_bytes = 0;
    int oracle = oracle_version;
};

/// The fixed schema for a given proprio and action width.
std::vector<field_spec> standard_schema(int proprio_dim, int action_dim);

struct collect_options {
    std::string task_id;
    std::string mode;
    int n_traj = 1000;
    std::uint64_t base_seed = 1;
    memsuite::reward_mode reward = reward_mode::dense;
    double max_failure_rate = 0.05;
    /// Called after every kept or discarded rollout with (kept, discarded).
    std::function<void(int, int)> progress;
};

struct collect_stats {
    int kept = 0;
    int discarded = 0;
    std::uint64_t bytes = 0;
};

/// Runs the scripted oracle from seeds base_seed, base_seed + 1, ... and writes
/// the first n_traj successful episodes to `path`.
collect_stats collect(const collect_options& opt, const std::string& path);

/// Serialises already-recorded trajectories (used by collect and tests).
void write(const std::string& path, header h, const std::vector<trajectory>& trajs);

class reader {
public:
    explicit reader(const std::string& path);

    [[nodiscard]] const dataset::header& header() const noexcept { return h_; }
    [[nodiscard]] std::size_t size() const noexcept { return h_.trajectories.size(); }
    trajectory read(std::size_t index);

private:
    std::ifstream in_;
    dataset::header h_;
    std::uint64_t payload_start_ = 0;
};

struct violation {
    int trajectory = -1;  // -1 for file-level problems
    std::string kind;     // e.g. "done-placement"
    std::string detail;
};

struct validation_report {
    std::size_t trajectories = 0;
    std::size_t replayed = 0;
    std::vector<violation> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/// Structural checks on every trajectory plus replay through a fresh
/// environment for a seeded sample of ceil(replay_fraction * n) trajectories.
/// Throws bad_magic, schema_mismatch or truncated_payload when the file cannot
/// be read at all.
validation_report validate(const std::string& path, double replay_fraction = 0.05, std::uint64_t sample_seed = 0);

/// Replays one record; returns an empty string on a match, else what differed.
std::string replay_mismatch(const header& h, const trajectory& traj);

}  // namespace memsuite::dataset
