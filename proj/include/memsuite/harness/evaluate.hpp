#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "memsuite/core/types.hpp"
#include "memsuite/harness/agent.hpp"

namespace memsuite::harness {

struct episode_outcome {
    std::uint64_t seed = 0;
    bool success = false;  // terminated with the success flag set
    int steps = 0;
    double episode_return = 0.0;
};

struct eval_report {
    std::string task_id;
    std::string mode;
    std::string observation_mode;
    std::string reward_mode;
    std::string agent;
    int episodes = 0;
    double success_rate_mean = 0.0;
    double success_rate_sem = 0.0;
    std::vector<episode_outcome> outcomes;
    double wall_seconds = 0.0;
    double steps_per_second = 0.0;
};

struct eval_options {
    int episodes = 100;
    std::uint64_t seed_start = 1;
    /// Per-episode wall-clock limit; <= 0 disables the guard.
    double episode_timeout_seconds = 60.0;
};

/// sqrt(p (1 - p) / n) for Bernoulli outcomes.
double bernoulli_sem(double p, int n) noexcept;

/// Runs seeds seed_start .. seed_start + episodes - 1. Throws agent_protocol on a
/// malformed action and timeout when an episode exceeds its wall-clock budget.
eval_report evaluate(agent& a, const env_config& config, const eval_options& opt = {});

std::string to_json(const eval_report& r, bool per_episode = true);

}  // namespace memsuite::harness
