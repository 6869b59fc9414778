#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>

namespace memsuite {

/// Counter-based 64-bit generator.
///
/// Draw `i` of stream `s` under seed `k` is `mix64(key(k, s) + (i + 1) * golden)`,
/// where `mix64` is the SplitMix64 finalizer. The output depends only on
/// (seed, stream, counter), so it is identical on every platform and any draw
/// can be reproduced without replaying earlier ones. Only integer arithmetic
/// is used for integer draws; real-valued draws use exact 53-bit conversion.
class rng {
public:
    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

    constexpr rng() noexcept : rng(0, 0) {}
    constexpr explicit rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : seed_(seed), stream_(stream), key_(mix64(mix64(seed) ^ (stream * 0xD1B54A32D192ED03ULL + 1))) {}

    static constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    constexpr std::uint64_t next_u64() noexcept { return mix64(key_ + (++counter_) * golden); }

    /// Uniform in [0, 1) with 53 random bits.
    constexpr double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    constexpr double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Unbiased integer in [0, n) by rejection. n must be > 0.
    constexpr std::uint64_t below(std::uint64_t n) noexcept {
        const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n);
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % n;
    }

    constexpr int below_int(int n) noexcept { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

    constexpr bool bernoulli(double p) noexcept { return uniform() < p; }

    /// Standard normal via Box-Muller (one value per call, two draws consumed).
    double normal() noexcept {
        double u1 = uniform();
        const double u2 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    template <typename Container>
    constexpr void shuffle(Container& c) noexcept {
        shuffle_span(std::span<typename Container::value_type>(c));
    }

    template <typename T>
    constexpr void shuffle_span(std::span<T> items) noexcept {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    [[nodiscard]] constexpr std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] constexpr std::uint64_t stream() const noexcept { return stream_; }
    [[nodiscard]] constexpr std::uint64_t counter() const noexcept { return counter_; }

    friend constexpr bool operator==(const rng&, const rng&) = default;

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace memsuite
