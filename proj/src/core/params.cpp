#include "memsuite/core/params.hpp"

#include <cmath>

#include "memsuite/core/error.hpp"

namespace memsuite {

int param_reader::integer(const std::string& key, int fallback, int lo, int hi) {
    used_.insert(key);
    auto it = params_.find(key);
    if (it == params_.end()) return fallback;
    const double v = it->second;
    if (v != std::floor(v) || v < lo || v > hi)
        throw error(errc::bad_param, task_ + ": '" + key + "' must be an integer in [" + std::to_string(lo) + ", " +
                                         std::to_string(hi) + "]");
    return static_cast<int>(v);
}

double param_reader::real(const std::string& key, double fallback, double lo, double hi) {
    used_.insert(key);
    auto it = params_.find(key);
    if (it == params_.end()) return fallback;
    const double v = it->second;
    if (!(v >= lo && v <= hi))
        throw error(errc::bad_param, task_ + ": '" + key + "' out of range [" + std::to_string(lo) + ", " +
                                         std::to_string(hi) + "]");
    return v;
}

void param_reader::finish() const {
    for (const auto& [key, value] : params_)
        if (!used_.count(key)) throw error(errc::bad_param, task_ + ": unknown parameter '" + key + "'");
}

}  // namespace memsuite
