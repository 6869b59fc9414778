#include <chrono>
#include <cmath>

#include "memsuite/core/error.hpp"
#include "memsuite/core/rng.hpp"
#include "memsuite/harness/bench.hpp"

namespace memsuite::harness {

bench_result bench(const env_config& config, std::size_t batch, int iterations, std::uint64_t base_seed,
                   execution exec, unsigned threads) {
    if (iterations < 1) throw error(errc::bad_param, "iterations must be at least 1");
    vector_engine eng(config, batch, base_seed, exec, threads);
    const space_spec& as = eng.specs().action;
    const std::size_t width = eng.action_width();

    constexpr std::size_t pool = 16;
    std::vector<std::vector<double>> actions(pool, std::vector<double>(batch * width));
    rng gen(base_seed, 0xBE7C);
    for (auto& a : actions) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (as.is_discrete()) {
                a[i] = static_cast<double>(gen.below(static_cast<std::uint64_t>(as.n)));
            } else {
                const std::size_t k = i % width;
                const double lo = std::isfinite(as.low[k]) ? as.low[k] : -1.0;
                const double hi = std::isfinite(as.high[k]) ? as.high[k] : 1.0;
                a[i] = gen.uniform(lo, hi);
            }
        }
    }

    eng.reset();
    const auto start = std::chrono::steady_clock::now();
    for (int it = 0; it < iterations; ++it) eng.step(actions[static_cast<std::size_t>(it) % pool]);
    bench_result r;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.batch = batch;
    r.steps = static_cast<long long>(batch) * iterations;
    r.steps_per_second = r.seconds > 0 ? static_cast<double>(r.steps) / r.seconds : 0.0;
    return r;
}

}  // namespace memsuite::harness
