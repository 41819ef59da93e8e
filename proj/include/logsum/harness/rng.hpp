#pragma once

// Counter-mode seeding: each trial draws from a generator keyed only by
// (seed, trial index), so trial order never changes results.

#include <cstdint>
#include <random>

namespace logsum::harness {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of trial `index` under run seed `seed`.
inline constexpr std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [lo, hi).
    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    /// Uniform on (lo, hi].
    double uniform_open_closed(double lo, double hi) { return hi - (hi - lo) * uniform(); }
    double normal() { return normal_(engine_); }
    /// Uniform integer in [lo, hi].
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
    bool chance(double p) { return uniform() < p; }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace logsum::harness
