#include <algorithm>
#include <cmath>

#include "memsuite/core/error.hpp"
#include "memsuite/harness/agent.hpp"
#include "memsuite/harness/wire.hpp"

namespace memsuite::harness {

std::vector<double> random_agent::act(const step_result&, const environment& env) {
    const space_spec& as = env.specs().action;
    if (as.is_discrete()) return {static_cast<double>(gen_.below(static_cast<std::uint64_t>(as.n)))};
    std::vector<double> a(as.flat_size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double lo = std::isfinite(as.low[i]) ? as.low[i] : -1.0;
        const double hi = std::isfinite(as.high[i]) ? as.high[i] : 1.0;
        a[i] = gen_.uniform(lo, hi);
    }
    return a;
}

oracle_agent::oracle_agent(const env_specs& specs, const task_params& params) {
    if (specs.meta.suite == suite::tabletop)
        tabletop_ = std::make_unique<oracle::tabletop_oracle>();
    else
        player_ = diagnostic::make_scripted_player(specs.meta, params);
}

void oracle_agent::reset_memory(std::uint64_t) {
    if (tabletop_) tabletop_->reset();
    if (player_) player_->reset();
}

std::vector<double> oracle_agent::act(const step_result& obs, const environment& env) {
    if (tabletop_) {
        const auto a = tabletop_->act(oracle::tabletop_view(env));
        return {a.begin(), a.end()};
    }
    return player_->act(obs.observation);
}

void replay_agent::add(std::uint64_t seed, std::vector<std::vector<double>> actions) {
    episodes_.emplace_back(seed, std::move(actions));
}

void replay_agent::reset_memory(std::uint64_t seed) {
    current_ = nullptr;
    next_ = 0;
    for (const auto& [s, acts] : episodes_)
        if (s == seed) current_ = &acts;
    if (!current_) throw error(errc::agent_protocol, "no recorded actions for seed " + std::to_string(seed));
}

std::vector<double> replay_agent::act(const step_result&, const environment&) {
    if (!current_ || next_ >= current_->size())
        throw error(errc::agent_protocol, "recorded action sequence exhausted");
    return (*current_)[next_++];
}

wire_agent::wire_agent(const std::string& address) : address_(address) {
    try {
        link_ = line_stream::connect(address);
    } catch (const std::exception& e) {
        throw error(errc::agent_protocol, e.what());
    }
}

wire_agent::wire_agent(std::unique_ptr<line_stream> link, std::string label)
    : address_(std::move(label)), link_(std::move(link)) {}

wire_agent::~wire_agent() = default;

namespace {

json exchange(line_stream& link, const json& req) {
    std::string line;
    try {
        link.write_line(req.dump());
        if (!link.read_line(line)) throw error(errc::agent_protocol, "agent closed the connection");
    } catch (const error&) {
        throw;
    } catch (const std::exception& e) {
        throw error(errc::agent_protocol, e.what());
    }
    json resp;
    try {
        resp = json::parse(line);
    } catch (const json::exception&) {
        throw error(errc::agent_protocol, "agent replied with malformed JSON");
    }
    if (!resp.is_object() || !resp.value("ok", false))
        throw error(errc::agent_protocol, "agent reported failure: " + resp.dump());
    return resp;
}

}  // namespace

void wire_agent::reset_memory(std::uint64_t seed) {
    exchange(*link_, {{"op", "reset_memory"}, {"payload", {{"seed", seed}}}});
}

std::vector<double> wire_agent::act(const step_result& obs, const environment&) {
    const json resp = exchange(*link_, {{"op", "act"}, {"payload", encode_step(obs)}});
    try {
        const json& a = resp.at("payload").at("action");
        if (a.is_number()) return {a.get<double>()};
        return a.get<std::vector<double>>();
    } catch (const json::exception&) {
        throw error(errc::agent_protocol, "agent reply lacks a numeric 'action'");
    }
}

std::unique_ptr<agent> make_agent(const std::string& spec, const env_specs& specs, const task_params& params) {
    if (spec == "random") return std::make_unique<random_agent>();
    if (spec == "oracle") return std::make_unique<oracle_agent>(specs, params);
    if (spec.starts_with("wire:")) return std::make_unique<wire_agent>(spec.substr(5));
    throw error(errc::bad_param, "unknown agent '" + spec + "' (expected random, oracle or wire:HOST:PORT)");
}

}  // namespace memsuite::harness
