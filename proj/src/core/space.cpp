#include "memsuite/core/space.hpp"

#include <sstream>

#include "memsuite/core/error.hpp"

namespace memsuite {

space_spec space_spec::discrete(std::int64_t n) {
    space_spec s;
    s.kind = kind_t::discrete;
    s.n = n;
    s.shape = {1};
    s.dtype = dtype::int32;
    s.validate();
    return s;
}

space_spec space_spec::box(std::vector<double> low, std::vector<double> high, std::vector<int> shape,
                           memsuite::dtype dt) {
    space_spec s;
    s.kind = kind_t::box;
    s.low = std::move(low);
    s.high = std::move(high);
    s.shape = std::move(shape);
    s.dtype = dt;
    s.validate();
    return s;
}

space_spec space_spec::uniform_box(double low, double high, std::vector<int> shape, memsuite::dtype dt) {
    std::size_t count = 1;
    for (int d : shape) count *= static_cast<std::size_t>(d);
    return box(std::vector<double>(count, low), std::vector<double>(count, high), std::move(shape), dt);
}

std::size_t space_spec::flat_size() const noexcept {
    if (kind == kind_t::discrete) return 1;
    std::size_t count = 1;
    for (int d : shape) count *= static_cast<std::size_t>(d);
    return count;
}

void space_spec::validate() const {
    if (shape.empty()) throw error(errc::bad_param, "space shape must be nonempty");
    for (int d : shape)
        if (d < 0) throw error(errc::bad_param, "negative space dimension");
    if (kind == kind_t::discrete) {
        if (n < 2) throw error(errc::bad_param, "discrete space needs n >= 2");
        return;
    }
    const std::size_t count = flat_size();
    if (low.size() != count || high.size() != count)
        throw error(errc::bad_param, "box bounds do not match shape");
    for (std::size_t i = 0; i < count; ++i)
        if (!(low[i] <= high[i])) throw error(errc::bad_param, "box low > high");
}

std::string to_string(const space_spec& s) {
    std::ostringstream os;
    if (s.is_discrete()) {
        os << "discrete(" << s.n << ")";
        return os.str();
    }
    os << "box(";
    for (std::size_t i = 0; i < s.shape.size(); ++i) os << (i ? "x" : "") << s.shape[i];
    os << ", " << dtype_name(s.dtype) << ")";
    return os.str();
}

}  // namespace memsuite
