#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "memsuite/core/environment.hpp"
#include "memsuite/core/rng.hpp"
#include "memsuite/diagnostic/scripted.hpp"
#include "memsuite/oracle/oracle.hpp"

namespace memsuite::harness {

/// Policy driven by the evaluation loop. `env` is the environment being
/// evaluated; only privileged agents (the oracle) may look past `obs`.
class agent {
public:
    virtual ~agent() = default;
    /// Called before every episode with that episode's seed.
    virtual void reset_memory(std::uint64_t seed) = 0;
    virtual std::vector<double> act(const step_result& obs, const environment& env) = 0;
    [[nodiscard]] virtual std::string name() const = 0;
};

/// Uniform over the action space; reseeded from the episode seed.
class random_agent final : public agent {
public:
    void reset_memory(std::uint64_t seed) override { gen_ = rng(seed, 0x5A17); }
    std::vector<double> act(const step_result& obs, const environment& env) override;
    [[nodiscard]] std::string name() const override { return "random"; }

private:
    rng gen_;
};

/// Tabletop scripted oracle, or the observation-only perfect player for the
/// diagnostic tasks that have one. Construction throws oracle_unavailable.
class oracle_agent final : public agent {
public:
    explicit oracle_agent(const env_specs& specs, const task_params& params = {});
    void reset_memory(std::uint64_t seed) override;
    std::vector<double> act(const step_result& obs, const environment& env) override;
    [[nodiscard]] std::string name() const override { return "oracle"; }

private:
    std::unique_ptr<oracle::tabletop_oracle> tabletop_;
    std::unique_ptr<diagnostic::scripted_player> player_;
};

/// Plays back fixed action sequences keyed by episode seed.
class replay_agent final : public agent {
public:
    void add(std::uint64_t seed, std::vector<std::vector<double>> actions);
    void reset_memory(std::uint64_t seed) override;
    std::vector<double> act(const step_result& obs, const environment& env) override;
    [[nodiscard]] std::string name() const override { return "replay"; }

private:
    std::vector<std::pair<std::uint64_t, std::vector<std::vector<double>>>> episodes_;
    const std::vector<std::vector<double>>* current_ = nullptr;
    std::size_t next_ = 0;
};

class line_stream;

/// External agent over TCP speaking NDJSON: the harness sends
/// {"op":"reset_memory","payload":{"seed":s}} and
/// {"op":"act","payload":<step result>} and expects {"ok":true,"payload":{"action":[...]}}.
class wire_agent final : public agent {
public:
    /// `address` is "host:port".
    explicit wire_agent(const std::string& address);
    /// Uses an established stream (e.g. one end of a socketpair).
    wire_agent(std::unique_ptr<line_stream> link, std::string label);
    ~wire_agent() override;
    void reset_memory(std::uint64_t seed) override;
    std::vector<double> act(const step_result& obs, const environment& env) override;
    [[nodiscard]] std::string name() const override { return "wire:" + address_; }

private:
    std::string address_;
    std::unique_ptr<line_stream> link_;
};

/// "random", "oracle", or "wire:HOST:PORT".
std::unique_ptr<agent> make_agent(const std::string& spec, const env_specs& specs, const task_params& params = {});

}  // namespace memsuite::harness
