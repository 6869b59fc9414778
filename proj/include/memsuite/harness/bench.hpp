#pragma once

#include <cstdint>

#include "memsuite/core/vector_engine.hpp"

namespace memsuite::harness {

struct bench_result {
    std::size_t batch = 0;
    long long steps = 0;  // lane steps, summed over the batch
    double seconds = 0.0;
    double steps_per_second = 0.0;
};

/// Steps `batch` lanes for `iterations` batch steps with uniformly random
/// actions drawn ahead of time, so agent cost is excluded.
bench_result bench(const env_config& config, std::size_t batch, int iterations, std::uint64_t base_seed = 1,
                   execution exec = execution::serial, unsigned threads = 0);

}  // namespace memsuite::harness
