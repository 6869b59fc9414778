#include <algorithm>
#include <cmath>
#include <numbers>

#include "memsuite/core/params.hpp"
#include "memsuite/diagnostic/tasks.hpp"

namespace memsuite::diagnostic {

void cartpole_physics::advance(int push_right) noexcept {
    constexpr double total_mass = cart_mass + pole_mass;
    constexpr double polemass_length = pole_mass * half_length;
    const double force = push_right ? force_mag : -force_mag;
    const double cos_t = std::cos(theta), sin_t = std::sin(theta);
    const double temp = (force + polemass_length * theta_dot * theta_dot * sin_t) / total_mass;
    const double theta_acc =
        (gravity * sin_t - cos_t * temp) / (half_length * (4.0 / 3.0 - pole_mass * cos_t * cos_t / total_mass));
    const double x_acc = temp - polemass_length * theta_acc * cos_t / total_mass;
    x_dot += dt * x_acc;
    x += dt * x_dot;
    theta_dot += dt * theta_acc;
    theta += dt * theta_dot;
}

stateless_cartpole::params_t stateless_cartpole::parse(const task_params& params, double default_sigma) {
    param_reader r(params, default_sigma > 0 ? "NoisyStatelessCartpole" : "StatelessCartpole");
    params_t p;
    p.noise_sigma = r.real("noise_sigma", default_sigma, 0.0, 100.0);
    p.max_steps = r.integer("max_steps", p.max_steps, 1, 1000000);
    r.finish();
    return p;
}

space_spec stateless_cartpole::obs_space() const { return space_spec::uniform_box(-1e6, 1e6, {2}); }

void stateless_cartpole::sample_observation() {
    double v = s_.phys.x_dot, w = s_.phys.theta_dot;
    if (p_.noise_sigma > 0) {
        v += p_.noise_sigma * s_.noise.normal();
        w += p_.noise_sigma * s_.noise.normal();
    }
    s_.obs = {static_cast<float>(v), static_cast<float>(w)};
}

void stateless_cartpole::reset(std::uint64_t seed) {
    rng gen(seed);
    s_.phys.x = gen.uniform(-0.05, 0.05);
    s_.phys.x_dot = gen.uniform(-0.05, 0.05);
    s_.phys.theta = gen.uniform(-0.05, 0.05);
    s_.phys.theta_dot = gen.uniform(-0.05, 0.05);
    s_.noise = rng(seed, 1);
    s_.t = 0;
    sample_observation();
}

transition stateless_cartpole::step(std::span<const double> action) {
    s_.phys.advance(static_cast<int>(action[0]));
    ++s_.t;
    sample_observation();
    transition tr;
    tr.reward = 1.0;
    tr.terminated = s_.phys.failed();
    tr.success = !tr.terminated && s_.t >= p_.max_steps;
    return tr;
}

void stateless_cartpole::observe(observation_mode, std::vector<float>& out) const {
    out.assign(s_.obs.begin(), s_.obs.end());
}

std::vector<float> stateless_cartpole::oracle_info() const {
    const auto& p = s_.phys;
    return {static_cast<float>(p.x), static_cast<float>(p.x_dot), static_cast<float>(p.theta),
            static_cast<float>(p.theta_dot)};
}

double pendulum_physics::angle_normalize(double a) noexcept {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return std::fmod(std::fmod(a + std::numbers::pi, two_pi) + two_pi, two_pi) - std::numbers::pi;
}

double pendulum_physics::advance(double u) noexcept {
    u = std::clamp(u, -max_torque, max_torque);
    const double th = angle_normalize(theta);
    const double cost = th * th + 0.1 * theta_dot * theta_dot + 0.001 * u * u;
    double new_dot = theta_dot + (3.0 * gravity / (2.0 * length) * std::sin(theta) +
                                  3.0 / (mass * length * length) * u) * dt;
    new_dot = std::clamp(new_dot, -max_speed, max_speed);
    theta += new_dot * dt;
    theta_dot = new_dot;
    return -cost;
}

stateless_pendulum::params_t stateless_pendulum::parse(const task_params& params, double default_sigma) {
    param_reader r(params, default_sigma > 0 ? "NoisyStatelessPendulum" : "StatelessPendulum");
    params_t p;
    p.noise_sigma = r.real("noise_sigma", default_sigma, 0.0, 100.0);
    p.max_steps = r.integer("max_steps", p.max_steps, 1, 1000000);
    r.finish();
    return p;
}

space_spec stateless_pendulum::obs_space() const { return space_spec::uniform_box(-1e6, 1e6, {1}); }

void stateless_pendulum::sample_observation() {
    double w = s_.phys.theta_dot;
    if (p_.noise_sigma > 0) w += p_.noise_sigma * s_.noise.normal();
    s_.obs = static_cast<float>(w);
}

void stateless_pendulum::reset(std::uint64_t seed) {
    rng gen(seed);
    s_.phys.theta = gen.uniform(-std::numbers::pi, std::numbers::pi);
    s_.phys.theta_dot = gen.uniform(-1.0, 1.0);
    s_.noise = rng(seed, 1);
    sample_observation();
}

transition stateless_pendulum::step(std::span<const double> action) {
    transition tr;
    tr.reward = s_.phys.advance(action[0]);
    sample_observation();
    return tr;
}

void stateless_pendulum::observe(observation_mode, std::vector<float>& out) const { out.assign(1, s_.obs); }

std::vector<float> stateless_pendulum::oracle_info() const {
    return {static_cast<float>(s_.phys.theta), static_cast<float>(s_.phys.theta_dot)};
}

}  // namespace memsuite::diagnostic
