#pragma once

#include <memory>
#include <string>
#include <vector>

#include "memsuite/core/types.hpp"

namespace memsuite::diagnostic {

/// Perfect-play agent that sees only observations. Available for MemoryLength,
/// CountRecall, Battleship (row-major sweep without repeats) and RepeatPrevious.
class scripted_player {
public:
    virtual ~scripted_player() = default;
    virtual void reset() = 0;
    virtual std::vector<double> act(const std::vector<float>& observation) = 0;
};

/// Throws oracle_unavailable for other tasks.
std::unique_ptr<scripted_player> make_scripted_player(const task_meta& meta, const task_params& params = {});

/// Analytic maximum episode return of the scripted player's task.
double analytic_max_return(const task_meta& meta);

}  // namespace memsuite::diagnostic
