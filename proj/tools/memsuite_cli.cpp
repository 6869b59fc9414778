#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "memsuite/core/error.hpp"
#include "memsuite/core/registry.hpp"
#include "memsuite/dataset/dataset.hpp"
#include "memsuite/harness/bench.hpp"
#include "memsuite/harness/evaluate.hpp"
#include "memsuite/harness/wire.hpp"

using namespace memsuite;
using nlohmann::json;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct env_flags {
    std::string task;
    std::string mode;
    std::string obs = "state";
    std::string reward;
    std::vector<std::string> params;

    env_config config() const {
        env_config c;
        c.task_id = task;
        c.mode = mode;
        const auto om = parse_observation_mode(obs);
        if (!om) throw usage_error("unknown --obs '" + obs + "' (state, masked, rgb, masked+rgb)");
        c.obs_mode = *om;
        if (!reward.empty()) {
            const auto rm = parse_reward_mode(reward);
            if (!rm) throw usage_error("unknown --reward '" + reward + "' (sparse, dense)");
            c.reward = *rm;
        }
        for (const auto& kv : params) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw usage_error("--param expects key=value, got '" + kv + "'");
            try {
                c.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
            } catch (const std::exception&) {
                throw usage_error("--param value is not a number: '" + kv + "'");
            }
        }
        return c;
    }
};

void add_env_flags(CLI::App* cmd, env_flags& f, bool task_required = true) {
    auto* t = cmd->add_option("--task", f.task, "Task id or group (e.g. ShellGame, RememberColor9)");
    if (task_required) t->required();
    cmd->add_option("--mode", f.mode, "Task mode (e.g. Touch); default: from the id or the first mode");
    cmd->add_option("--obs", f.obs, "Observation mode: state, masked, rgb, masked+rgb")->capture_default_str();
    cmd->add_option("--reward", f.reward, "Reward mode: sparse or dense; default: the task's first");
    cmd->add_option("--param", f.params, "Task parameter key=value (repeatable)");
}

std::uint64_t default_seed() {
    if (const char* s = std::getenv("MIKASA_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw usage_error(std::string("MIKASA_SEED is not an unsigned integer: '") + s + "'");
        }
    }
    return 1;
}

/// Expands --config FILE into flags placed ahead of the command-line flags, so
/// the latter win. Top-level keys apply to every subcommand; an object keyed
/// by a subcommand name applies to that subcommand only.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].starts_with("--config=")) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw usage_error("cannot read config file " + path);
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::exception& e) {
        throw usage_error("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!cfg.is_object()) throw usage_error("config file must hold a JSON object");

    std::size_t sub_at = 0;
    while (sub_at < args.size() && args[sub_at].starts_with("-")) ++sub_at;
    if (sub_at == args.size()) return args;
    const std::string sub = args[sub_at];

    static const std::set<std::string> subcommands = {"list", "run", "eval", "collect", "validate", "serve", "bench"};
    std::map<std::string, json> merged;
    for (const auto& [k, v] : cfg.items())
        if (!subcommands.count(k)) merged[k] = v;
    if (cfg.contains(sub) && cfg.at(sub).is_object())
        for (const auto& [k, v] : cfg.at(sub).items()) merged[k] = v;

    std::vector<std::string> injected;
    auto scalar = [&](const std::string& key, const json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer() || v.is_number_unsigned()) return std::to_string(v.get<long long>());
        if (v.is_number()) {
            std::ostringstream os;
            os << std::setprecision(17) << v.get<double>();
            return os.str();
        }
        throw usage_error("config key '" + key + "' must be a string, number, boolean or list");
    };
    for (const auto& [k, v] : merged) {
        const std::string flag = "--" + k;
        if (v.is_boolean()) {
            if (v.get<bool>()) injected.push_back(flag);
        } else if (v.is_array()) {
            for (const auto& e : v) {
                injected.push_back(flag);
                injected.push_back(scalar(k, e));
            }
        } else if (v.is_object() && k == "param") {
            for (const auto& [pk, pv] : v.items()) {
                injected.push_back(flag);
                injected.push_back(pk + "=" + scalar(k, pv));
            }
        } else {
            injected.push_back(flag);
            injected.push_back(scalar(k, v));
        }
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_at) + 1, injected.begin(), injected.end());
    return args;
}

int cmd_list(const std::string& suite_filter, bool as_json) {
    const auto metas = list_tasks();
    if (as_json) {
        json arr = json::array();
        for (const auto& m : metas) {
            const bool tab = m.suite == suite::tabletop;
            if (!suite_filter.empty() && suite_filter != (tab ? "tabletop" : "diagnostic")) continue;
            environment env = make({m.task_id, m.mode});
            arr.push_back(harness::encode_specs(env.specs()).at("meta"));
        }
        std::cout << arr.dump(2) << "\n";
        return 0;
    }
    std::map<std::string, int> groups;
    int tabletop = 0, diagnostic = 0;
    std::printf("%-28s %-22s %-10s %-24s %4s %5s\n", "task_id", "group", "mode", "memory", "xi", "T");
    for (const auto& m : metas) {
        const bool tab = m.suite == suite::tabletop;
        if (!suite_filter.empty() && suite_filter != (tab ? "tabletop" : "diagnostic")) continue;
        std::printf("%-28s %-22s %-10s %-24s %4d %5d\n", m.task_id.c_str(), m.group.c_str(), m.mode.c_str(),
                    memory_types_string(m.memory_types).c_str(), m.correlation_horizon, m.timeout);
        if (tab) {
            ++tabletop;
            ++groups[m.group];
        } else {
            ++diagnostic;
        }
    }
    std::printf("\n%d tabletop task/mode combinations in %zu groups; %d diagnostic tasks\n", tabletop, groups.size(),
                diagnostic);
    return 0;
}

std::string fmt_vec(const std::vector<double>& v) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << std::setprecision(6) << v[i];
    os << "]";
    return os.str();
}

int cmd_run(const env_flags& f, const std::string& agent_spec, std::uint64_t seed) {
    env_config c = f.config();
    environment env = make(c);
    auto a = harness::make_agent(agent_spec, env.specs(), c.params);
    a->reset_memory(seed);
    step_result r = env.reset(seed);
    const auto& meta = env.specs().meta;
    std::printf("%s  seed %llu  T %d  obs %s  reward %s\n", meta.task_id.c_str(), static_cast<unsigned long long>(seed),
                meta.timeout, std::string(observation_mode_name(c.obs_mode)).c_str(),
                std::string(reward_mode_name(env.reward_mode())).c_str());
    double ret = 0;
    while (!r.done()) {
        const auto phase = r.info.phase;
        const std::vector<double> action = a->act(r, env);
        r = env.step(action);
        ret += r.reward;
        std::printf("t=%-4d %-12s action=%-40s reward=%-10.6g success=%d term=%d trunc=%d\n", r.info.elapsed_steps - 1,
                    std::string(phase_name(phase)).c_str(), fmt_vec(action).c_str(), r.reward, r.info.success ? 1 : 0,
                    r.terminated ? 1 : 0, r.truncated ? 1 : 0);
    }
    std::printf("return %.6g  steps %d  success %s\n", ret, r.info.elapsed_steps,
                (r.terminated && r.info.success) ? "yes" : "no");
    return 0;
}

int cmd_eval(const env_flags& f, const std::string& agent_spec, const harness::eval_options& o, const std::string& out,
             bool summary_only) {
    env_config c = f.config();
    environment probe = make(c);
    auto a = harness::make_agent(agent_spec, probe.specs(), c.params);
    const auto rep = harness::evaluate(*a, c, o);
    const std::string text = harness::to_json(rep, !summary_only);
    if (out.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream os(out);
        if (!os) throw std::runtime_error("cannot write " + out);
        os << text << "\n";
        std::fprintf(stderr, "%s: success %.2f +/- %.2f over %d episodes\n", rep.task_id.c_str(), rep.success_rate_mean,
                     rep.success_rate_sem, rep.episodes);
    }
    return 0;
}

int cmd_collect(const env_flags& f, int n_traj, std::uint64_t seed, const std::string& out) {
    const env_config c = f.config();
    dataset::collect_options o;
    o.task_id = c.task_id;
    o.mode = c.mode;
    o.n_traj = n_traj;
    o.base_seed = seed;
    if (c.reward) o.reward = *c.reward;
    o.progress = [n_traj](int kept, int discarded) {
        if ((kept + discarded) % 100 == 0 || kept == n_traj)
            std::fprintf(stderr, "\rkept %d/%d  discarded %d", kept, n_traj, discarded);
    };
    const auto s = dataset::collect(o, out);
    std::fprintf(stderr, "\n");
    std::printf("wrote %s: %d trajectories, %d discarded rollouts, %llu bytes\n", out.c_str(), s.kept, s.discarded,
                static_cast<unsigned long long>(s.bytes));
    return 0;
}

int cmd_validate(const std::string& path, double fraction, bool as_json) {
    const auto rep = dataset::validate(path, fraction);
    if (as_json) {
        json v = json::array();
        for (const auto& x : rep.violations)
            v.push_back({{"trajectory", x.trajectory}, {"kind", x.kind}, {"detail", x.detail}});
        std::cout << json({{"trajectories", rep.trajectories}, {"replayed", rep.replayed}, {"violations", v}}).dump(2)
                  << "\n";
    } else {
        for (const auto& x : rep.violations)
            std::printf("trajectory %d: %s: %s\n", x.trajectory, x.kind.c_str(), x.detail.c_str());
        std::printf("%zu trajectories, %zu replayed, %zu violations\n", rep.trajectories, rep.replayed,
                    rep.violations.size());
    }
    return rep.ok() ? 0 : 1;
}

int cmd_serve(const std::string& bind, int max_sessions) {
    harness::server_options o;
    o.bind = bind;
    o.max_sessions = max_sessions;
    harness::wire_server srv(o);
    if (bind == "stdio") {
        harness::line_stream s(0, 1, false);
        srv.serve_stream(s);
        return 0;
    }
    srv.start();
    std::fprintf(stderr, "listening on port %d\n", srv.port());
    for (;;) ::pause();
}

int cmd_bench(const env_flags& f, std::size_t batch, int iterations, std::uint64_t seed, bool parallel,
              unsigned threads) {
    const env_config c = f.config();
    const auto r = harness::bench(c, batch, iterations, seed, parallel ? execution::parallel : execution::serial, threads);
    std::printf("%s batch %zu: %lld steps in %.3f s = %.0f steps/s\n", c.task_id.c_str(), r.batch, r.steps, r.seconds,
                r.steps_per_second);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Memory-intensive RL task suite: list, run, evaluate, record datasets, serve."};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("--config", "JSON file whose keys set flags; explicit flags override it");

    std::string suite_filter;
    bool as_json = false;
    auto* list = app.add_subcommand("list", "List tasks with memory type, correlation horizon and timeout");
    list->add_option("--suite", suite_filter, "tabletop or diagnostic")->check(CLI::IsMember({"tabletop", "diagnostic"}));
    list->add_flag("--json", as_json, "Full metadata as JSON");

    env_flags ef;
    std::string agent = "random";
    std::uint64_t seed = 0;
    bool seed_set = false;
    auto* run = app.add_subcommand("run", "Run one episode and print a per-step log");
    add_env_flags(run, ef);
    run->add_option("--agent", agent, "random, oracle or wire:HOST:PORT")->capture_default_str();
    run->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t v) { seed = v, seed_set = true; },
                                            "Episode seed (default: MIKASA_SEED or 1)");

    harness::eval_options eo;
    std::string out;
    bool summary_only = false;
    auto* eval = app.add_subcommand("eval", "Evaluate an agent over a fixed seed list");
    add_env_flags(eval, ef);
    eval->add_option("--agent", agent, "random, oracle or wire:HOST:PORT")->capture_default_str();
    eval->add_option("--episodes", eo.episodes, "Number of episodes")->capture_default_str()->check(CLI::PositiveNumber);
    eval->add_option_function<std::uint64_t>("--seed-start", [&](std::uint64_t v) { seed = v, seed_set = true; },
                                             "First seed (default: MIKASA_SEED or 1)");
    eval->add_option("--timeout", eo.episode_timeout_seconds, "Per-episode wall-clock limit in seconds; 0 disables")
        ->capture_default_str();
    eval->add_option("--out", out, "Write the JSON report here instead of stdout");
    eval->add_flag("--summary-only", summary_only, "Omit per-episode outcomes");

    int n_traj = 1000;
    auto* collect = app.add_subcommand("collect", "Record oracle trajectories to a dataset file");
    add_env_flags(collect, ef);
    collect->add_option("--n-traj", n_traj, "Successful trajectories to keep")->capture_default_str()->check(
        CLI::PositiveNumber);
    collect->add_option_function<std::uint64_t>("--seed-start", [&](std::uint64_t v) { seed = v, seed_set = true; },
                                                "First seed (default: MIKASA_SEED or 1)");
    collect->add_option("--out", out, "Output file")->required();

    std::string path;
    double fraction = 0.05;
    auto* validate = app.add_subcommand("validate", "Check a dataset file");
    validate->add_option("path", path, "Dataset file")->required();
    validate->add_option("--replay-fraction", fraction, "Share of trajectories replayed")->capture_default_str()->check(
        CLI::Range(0.0, 1.0));
    validate->add_flag("--json", as_json, "Report as JSON");

    std::string bind = "127.0.0.1:7878";
    int max_sessions = 64;
    auto* serve = app.add_subcommand("serve", "Serve environments over NDJSON (TCP or stdio)");
    serve->add_option("--bind", bind, "host:port or stdio")->capture_default_str();
    serve->add_option("--max-sessions", max_sessions, "Concurrent session limit")->capture_default_str();

    std::size_t batch = 1024;
    int iterations = 200;
    bool parallel = false;
    unsigned threads = 0;
    auto* bench = app.add_subcommand("bench", "Measure batched stepping throughput");
    add_env_flags(bench, ef);
    bench->add_option("--batch", batch, "Lanes")->capture_default_str()->check(CLI::PositiveNumber);
    bench->add_option("--iterations", iterations, "Batch steps")->capture_default_str()->check(CLI::PositiveNumber);
    bench->add_flag("--parallel", parallel, "Step lanes on a worker pool");
    bench->add_option("--threads", threads, "Worker threads (0: hardware concurrency)");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
        if (!seed_set) seed = default_seed();

        if (*list) return cmd_list(suite_filter, as_json);
        if (*run) return cmd_run(ef, agent, seed);
        if (*eval) {
            eo.seed_start = seed;
            return cmd_eval(ef, agent, eo, out, summary_only);
        }
        if (*collect) return cmd_collect(ef, n_traj, seed, out);
        if (*validate) return cmd_validate(path, fraction, as_json);
        if (*serve) return cmd_serve(bind, max_sessions);
        if (*bench) return cmd_bench(ef, batch, iterations, seed, parallel, threads);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const usage_error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
