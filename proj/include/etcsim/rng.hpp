#pragma once

#include <cstdint>
#include <random>

namespace etcsim {

// Deterministic helpers on top of mt19937_64. std::uniform_real_distribution
// is implementation-defined, so traces would not be reproducible across
// standard libraries; these are fully pinned.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * uniform01(gen);
}

inline bool bernoulli(std::mt19937_64& gen, double p) {
    return uniform01(gen) < p;
}

// Uniform integer in [0, n).
inline std::uint64_t uniform_index(std::mt19937_64& gen, std::uint64_t n) {
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = gen();
    } while (x >= limit);
    return x % n;
}

}  // namespace etcsim
