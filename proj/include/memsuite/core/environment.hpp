#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "memsuite/core/space.hpp"
#include "memsuite/core/types.hpp"

namespace memsuite {

/// Outcome of one task transition, before the engine applies the timeout and
/// reward-mode rules.
struct transition {
    double reward = 0.0;  // the task's shaped (dense) reward
    bool success = false;
    bool terminated = false;
};

/// Per-task dynamics. Implementations are pure state machines driven by the
/// engine: actions arrive validated and clamped, and all randomness comes from
/// generators seeded in `reset`.
class task {
public:
    virtual ~task() = default;

    [[nodiscard]] virtual std::unique_ptr<task> clone() const = 0;
    [[nodiscard]] virtual space_spec action_space() const = 0;
    [[nodiscard]] virtual space_spec observation_space(observation_mode mode) const = 0;
    [[nodiscard]] virtual bool supports_raster() const { return false; }

    virtual void reset(std::uint64_t seed) = 0;
    virtual transition step(std::span<const double> action) = 0;
    virtual void observe(observation_mode mode, std::vector<float>& out) const = 0;
    virtual void render(std::span<std::uint8_t> out) const { (void)out; }

    [[nodiscard]] virtual phase_id phase() const { return phase_id::action; }
    [[nodiscard]] virtual std::vector<float> oracle_info() const = 0;
    [[nodiscard]] virtual std::vector<float> prompt() const { return {}; }
};

struct env_specs {
    space_spec observation;
    std::optional<space_spec> raster;
    space_spec action;
    task_meta meta;
};

/// A made task instance. Single-threaded; movable between threads.
class environment {
public:
    environment(task_meta meta, env_config config, std::unique_ptr<task> impl);
    environment(const environment& other);
    environment& operator=(const environment& other);
    environment(environment&&) noexcept = default;
    environment& operator=(environment&&) noexcept = default;
    ~environment() = default;

    [[nodiscard]] const env_specs& specs() const noexcept { return specs_; }
    [[nodiscard]] const env_config& config() const noexcept { return config_; }
    [[nodiscard]] memsuite::reward_mode reward_mode() const noexcept { return reward_mode_; }

    /// Starts a new episode; the returned result carries the t = 0 observation.
    step_result reset(std::uint64_t seed);
    step_result step(std::span<const double> action);
    step_result step(std::initializer_list<double> action) {
        return step(std::span<const double>(action.begin(), action.size()));
    }

    /// Validates arity/dtype/range without touching state; throws on violation.
    void check_action(std::span<const double> action) const;

    [[nodiscard]] int elapsed_steps() const noexcept { return t_; }
    [[nodiscard]] bool episode_active() const noexcept { return active_; }
    [[nodiscard]] std::uint64_t episode_seed() const noexcept { return seed_; }

    /// Privileged access to the hidden state, for oracles and tests.
    [[nodiscard]] task& impl() noexcept { return *impl_; }
    [[nodiscard]] const task& impl() const noexcept { return *impl_; }

private:
    void fill_observation(step_result& out) const;

    env_specs specs_;
    env_config config_;
    memsuite::reward_mode reward_mode_ = reward_mode::dense;
    std::unique_ptr<task> impl_;
    std::vector<double> scratch_;
    int t_ = 0;
    bool active_ = false;
    std::uint64_t seed_ = 0;
};

}  // namespace memsuite
