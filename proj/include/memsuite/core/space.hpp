#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace memsuite {

enum class dtype { real32, int32, uint8 };

constexpr std::string_view dtype_name(dtype d) noexcept {
    switch (d) {
        case dtype::real32: return "real32";
        case dtype::int32: return "int32";
        case dtype::uint8: return "uint8";
    }
    return "?";
}

/// Either `discrete(n)` (a single index in [0, n)) or a box with elementwise bounds.
struct space_spec {
    enum class kind_t { discrete, box };

    kind_t kind = kind_t::discrete;
    std::int64_t n = 0;
    std::vector<double> low;
    std::vector<double> high;
    std::vector<int> shape;
    memsuite::dtype dtype = dtype::int32;

    static space_spec discrete(std::int64_t n);
    static space_spec box(std::vector<double> low, std::vector<double> high, std::vector<int> shape,
                          memsuite::dtype dt = dtype::real32);
    /// Box with the same bounds on every element.
    static space_spec uniform_box(double low, double high, std::vector<int> shape,
                                  memsuite::dtype dt = dtype::real32);

    [[nodiscard]] bool is_discrete() const noexcept { return kind == kind_t::discrete; }
    /// Number of scalars in one sample (1 for discrete).
    [[nodiscard]] std::size_t flat_size() const noexcept;
    /// Throws bad_param when the invariants do not hold.
    void validate() const;

    friend bool operator==(const space_spec&, const space_spec&) = default;
};

std::string to_string(const space_spec& s);

}  // namespace memsuite
