#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "io.hpp"
#include "memsuite/core/error.hpp"
#include "memsuite/core/registry.hpp"
#include "memsuite/dataset/dataset.hpp"
#include "memsuite/oracle/oracle.hpp"
#include "memsuite/tabletop/task.hpp"

namespace memsuite::dataset {

namespace {

struct plan {
    std::uint64_t seed = 0;
    std::vector<float> actions;  // T x A, exactly the values the engine applied
};

env_config make_config(const collect_options& opt, observation_mode mode) {
    env_config c;
    c.task_id = opt.task_id;
    c.mode = opt.mode;
    c.obs_mode = mode;
    c.reward = opt.reward;
    return c;
}

/// Oracle rollout on the cheap masked observation; the action stream is all a
/// later rendering pass needs.
bool rollout(environment& env, oracle::tabletop_oracle& oracle, std::uint64_t seed, std::vector<float>& actions) {
    const space_spec& as = env.specs().action;
    actions.clear();
    env.reset(seed);
    oracle.reset();
    const auto& view = oracle::tabletop_view(env);
    for (;;) {
        oracle::action4 a = oracle.act(view);
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] = static_cast<float>(std::clamp(a[i], as.low[i], as.high[i]));
        for (double v : a) actions.push_back(static_cast<float>(v));
        const step_result r = env.step(std::span<const double>(a));
        if (r.done()) return r.terminated && r.info.success;
    }
}

trajectory render_episode(environment& env, const plan& p, int proprio_dim, int action_dim) {
    trajectory t;
    t.seed = p.seed;
    t.length = static_cast<int>(p.actions.size()) / action_dim;
    step_result r = env.reset(p.seed);
    t.prompt = r.info.prompt;
    std::vector<double> a(static_cast<std::size_t>(action_dim));
    for (int i = 0; i < t.length; ++i) {
        t.rgb.insert(t.rgb.end(), r.raster.begin(), r.raster.end());
        t.proprio.insert(t.proprio.end(), r.observation.begin(), r.observation.begin() + proprio_dim);
        const float* src = p.actions.data() + static_cast<std::size_t>(i * action_dim);
        std::copy(src, src + action_dim, a.begin());
        t.action.insert(t.action.end(), src, src + action_dim);
        r = env.step(std::span<const double>(a));
        t.reward.push_back(r.reward);
        t.success.push_back(r.info.success ? 1 : 0);
        t.done.push_back(r.done() ? 1 : 0);
        if (r.done() != (i + 1 == t.length))
            throw std::logic_error("rendering pass diverged from the oracle rollout");
    }
    if (!t.success.back()) throw std::logic_error("rendering pass lost the oracle's success");
    return t;
}

}  // namespace

collect_stats collect(const collect_options& opt, const std::string& path) {
    if (opt.n_traj < 1) throw error(errc::bad_param, "n_traj must be at least 1");
    environment probe = make(make_config(opt, observation_mode::masked));
    (void)oracle::tabletop_view(probe);
    const int action_dim = static_cast<int>(probe.specs().action.flat_size());

    header h;
    h.task_id = probe.specs().meta.task_id;
    h.group = probe.specs().meta.group;
    h.mode = probe.specs().meta.mode;
    h.reward = probe.reward_mode();
    h.proprio_dim = tabletop::proprio_size;
    h.action_dim = action_dim;
    h.schema = standard_schema(h.proprio_dim, h.action_dim);
    h.seed_first = opt.base_seed;

    std::vector<plan> plans;
    plans.reserve(static_cast<std::size_t>(opt.n_traj));
    oracle::tabletop_oracle oracle;
    collect_stats stats;
    std::uint64_t seed = opt.base_seed;
    while (stats.kept < opt.n_traj) {
        plan p{seed, {}};
        if (rollout(probe, oracle, seed, p.actions)) {
            plans.push_back(std::move(p));
            ++stats.kept;
        } else {
            h.discarded_seeds.push_back(seed);
            ++stats.discarded;
            const int tried = stats.kept + stats.discarded;
            if (tried >= 20 && stats.discarded > opt.max_failure_rate * tried)
                throw error(errc::oracle_failure_rate, std::to_string(stats.discarded) + " of " +
                                                           std::to_string(tried) + " oracle rollouts failed on " +
                                                           h.task_id);
        }
        if (opt.progress) opt.progress(stats.kept, stats.discarded);
        ++seed;
    }
    const int tried = stats.kept + stats.discarded;
    if (stats.discarded > opt.max_failure_rate * tried)
        throw error(errc::oracle_failure_rate,
                    std::to_string(stats.discarded) + " of " + std::to_string(tried) + " oracle rollouts failed");
    h.seed_last = seed - 1;
    for (const auto& p : plans)
        h.trajectories.push_back({p.seed, static_cast<int>(p.actions.size()) / action_dim, 0, {}});

    environment env = make(make_config(opt, observation_mode::rgb));
    // Prompts are known only after a reset, and the header precedes the payload.
    for (std::size_t i = 0; i < plans.size(); ++i) h.trajectories[i].prompt = env.reset(plans[i].seed).info.prompt;
    detail::assign_offsets(h);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    detail::write_preamble(out, h);
    for (const auto& p : plans) detail::write_trajectory(out, h, render_episode(env, p, h.proprio_dim, action_dim));
    if (!out.flush()) throw std::runtime_error("write failed for " + path);
    stats.bytes = static_cast<std::uint64_t>(out.tellp());
    return stats;
}

}  // namespace memsuite::dataset
