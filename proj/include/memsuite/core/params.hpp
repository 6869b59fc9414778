#pragma once

#include <set>
#include <string>

#include "memsuite/core/types.hpp"

namespace memsuite {

/// Reads typed task parameters with defaults and ranges. `finish()` rejects
/// keys that were never read.
class param_reader {
public:
    param_reader(const task_params& params, std::string task) : params_(params), task_(std::move(task)) {}

    int integer(const std::string& key, int fallback, int lo, int hi);
    double real(const std::string& key, double fallback, double lo, double hi);
    void finish() const;

private:
    const task_params& params_;
    std::string task_;
    std::set<std::string> used_;
};

}  // namespace memsuite
