#include <chrono>
#include <cmath>

#include <json.hpp>

#include "memsuite/core/error.hpp"
#include "memsuite/core/registry.hpp"
#include "memsuite/harness/evaluate.hpp"

namespace memsuite::harness {

double bernoulli_sem(double p, int n) noexcept {
    if (n <= 0) return 0.0;
    return std::sqrt(p * (1.0 - p) / n);
}

eval_report evaluate(agent& a, const env_config& config, const eval_options& opt) {
    using clock = std::chrono::steady_clock;
    if (opt.episodes < 1) throw error(errc::bad_param, "episodes must be at least 1");
    environment env = make(config);
    const task_meta& meta = env.specs().meta;

    eval_report rep;
    rep.task_id = meta.task_id;
    rep.mode = meta.mode;
    rep.observation_mode = std::string(observation_mode_name(config.obs_mode));
    rep.reward_mode = std::string(reward_mode_name(env.reward_mode()));
    rep.agent = a.name();
    rep.episodes = opt.episodes;

    long long total_steps = 0;
    int wins = 0;
    const auto start = clock::now();
    for (int e = 0; e < opt.episodes; ++e) {
        const std::uint64_t seed = opt.seed_start + static_cast<std::uint64_t>(e);
        const auto episode_start = clock::now();
        a.reset_memory(seed);
        step_result r = env.reset(seed);
        episode_outcome out;
        out.seed = seed;
        while (!r.done()) {
            const std::vector<double> action = a.act(r, env);
            try {
                env.check_action(action);
            } catch (const error& err) {
                throw error(errc::agent_protocol, "episode seed " + std::to_string(seed) + ": " + err.what());
            }
            r = env.step(action);
            out.episode_return += r.reward;
            ++out.steps;
            if (opt.episode_timeout_seconds > 0 &&
                std::chrono::duration<double>(clock::now() - episode_start).count() > opt.episode_timeout_seconds)
                throw error(errc::timeout, "episode seed " + std::to_string(seed) + " exceeded " +
                                               std::to_string(opt.episode_timeout_seconds) + " s");
        }
        out.success = r.terminated && r.info.success;
        wins += out.success ? 1 : 0;
        total_steps += out.steps;
        rep.outcomes.push_back(out);
    }
    rep.wall_seconds = std::chrono::duration<double>(clock::now() - start).count();
    rep.steps_per_second = rep.wall_seconds > 0 ? static_cast<double>(total_steps) / rep.wall_seconds : 0.0;
    rep.success_rate_mean = static_cast<double>(wins) / opt.episodes;
    rep.success_rate_sem = bernoulli_sem(rep.success_rate_mean, opt.episodes);
    return rep;
}

std::string to_json(const eval_report& r, bool per_episode) {
    nlohmann::ordered_json j;
    j["task_id"] = r.task_id;
    j["mode"] = r.mode;
    j["observation_mode"] = r.observation_mode;
    j["reward_mode"] = r.reward_mode;
    j["agent"] = r.agent;
    j["episodes"] = r.episodes;
    j["success_rate_mean"] = r.success_rate_mean;
    j["success_rate_sem"] = r.success_rate_sem;
    j["wall_seconds"] = r.wall_seconds;
    j["steps_per_second"] = r.steps_per_second;
    if (per_episode) {
        auto eps = nlohmann::ordered_json::array();
        for (const auto& o : r.outcomes)
            eps.push_back({{"seed", o.seed}, {"success", o.success}, {"steps", o.steps}, {"return", o.episode_return}});
        j["outcomes"] = eps;
    }
    return j.dump(2);
}

}  // namespace memsuite::harness
