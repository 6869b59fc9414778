#include "memsuite/core/environment.hpp"

#include <algorithm>
#include <cmath>

#include "memsuite/core/error.hpp"

namespace memsuite {

environment::environment(task_meta meta, env_config config, std::unique_ptr<task> impl)
    : config_(std::move(config)), impl_(std::move(impl)) {
    specs_.action = impl_->action_space();
    specs_.observation = impl_->observation_space(config_.obs_mode);
    const bool wants_raster =
        config_.obs_mode == observation_mode::rgb || config_.obs_mode == observation_mode::masked_rgb;
    if (wants_raster) specs_.raster = space_spec::uniform_box(0, 255, {128, 128, 6}, dtype::uint8);
    specs_.meta = std::move(meta);
    reward_mode_ = config_.reward.value_or(specs_.meta.reward_modes.front());
}

environment::environment(const environment& other)
    : specs_(other.specs_),
      config_(other.config_),
      reward_mode_(other.reward_mode_),
      impl_(other.impl_->clone()),
      t_(other.t_),
      active_(other.active_),
      seed_(other.seed_) {}

environment& environment::operator=(const environment& other) {
    if (this != &other) {
        environment copy(other);
        *this = std::move(copy);
    }
    return *this;
}

void environment::check_action(std::span<const double> action) const {
    const space_spec& as = specs_.action;
    if (action.size() != as.flat_size())
        throw error(errc::action_shape, "expected " + std::to_string(as.flat_size()) + " action values, got " +
                                            std::to_string(action.size()));
    for (double v : action)
        if (!std::isfinite(v)) throw error(errc::action_shape, "non-finite action value");
    if (as.is_discrete()) {
        const double v = action[0];
        if (v != std::floor(v)) throw error(errc::action_shape, "discrete action must be integral");
        if (v < 0 || v >= static_cast<double>(as.n))
            throw error(errc::action_range, "discrete action " + std::to_string(static_cast<long long>(v)) +
                                                " outside [0, " + std::to_string(as.n) + ")");
    }
}

void environment::fill_observation(step_result& out) const {
    impl_->observe(config_.obs_mode, out.observation);
    if (specs_.raster) {
        out.raster.assign(specs_.raster->flat_size(), 0);
        impl_->render(out.raster);
    }
    out.info.phase = impl_->phase();
    if (config_.obs_mode == observation_mode::state) out.info.oracle = impl_->oracle_info();
    out.info.prompt = impl_->prompt();
    out.info.elapsed_steps = t_;
}

step_result environment::reset(std::uint64_t seed) {
    seed_ = seed;
    t_ = 0;
    active_ = true;
    impl_->reset(seed);
    step_result out;
    fill_observation(out);
    return out;
}

step_result environment::step(std::span<const double> action) {
    if (!active_) throw error(errc::stepped_finished, "episode finished or not reset; call reset first");
    check_action(action);

    const space_spec& as = specs_.action;
    scratch_.assign(action.begin(), action.end());
    if (!as.is_discrete()) {
        for (std::size_t i = 0; i < scratch_.size(); ++i) {
            double v = std::clamp(scratch_[i], as.low[i], as.high[i]);
            if (as.dtype == dtype::real32) v = static_cast<double>(static_cast<float>(v));
            scratch_[i] = v;
        }
    }

    const transition tr = impl_->step(scratch_);
    ++t_;

    step_result out;
    out.terminated = tr.terminated;
    out.truncated = !tr.terminated && t_ >= specs_.meta.timeout;
    out.reward = reward_mode_ == reward_mode::sparse ? (tr.success ? 1.0 : 0.0) : tr.reward;
    out.info.success = tr.success;
    fill_observation(out);
    if (out.done()) active_ = false;
    return out;
}

}  // namespace memsuite
