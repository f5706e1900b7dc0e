#pragma once

#include <cmath>
#include <cstdint>

// Counter-based random number streams. Every draw is a pure function of
// (key, counter), so results do not depend on evaluation order or on how
// work is split across threads.

namespace sonarsim {

/// SplitMix64 finalizer; bijective on 64-bit values.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Derive a stream key from a seed and a stream identifier.
inline std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
    return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ull));
}

inline std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive_key(derive_key(seed, a), b);
}

inline std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                std::uint64_t c) {
    return derive_key(derive_key(seed, a, b), c);
}

/// Uniform double in [0, 1) from (key, counter).
inline double rng_u01(std::uint64_t key, std::uint64_t counter) {
    return static_cast<double>(mix64(key ^ mix64(counter)) >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1]; never zero, safe as a log() argument.
inline double rng_u01_open(std::uint64_t key, std::uint64_t counter) {
    return static_cast<double>((mix64(key ^ mix64(counter)) >> 11) + 1) * 0x1.0p-53;
}

inline double rng_uniform(std::uint64_t key, std::uint64_t counter, double lo, double hi) {
    return lo + (hi - lo) * rng_u01(key, counter);
}

/// Standard normal via Box-Muller; draw index n consumes counters 2n, 2n+1.
inline double rng_gaussian(std::uint64_t key, std::uint64_t draw) {
    const double u1 = rng_u01_open(key, 2 * draw);
    const double u2 = rng_u01(key, 2 * draw + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

/// Small sequential generator for scene construction and test data.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    double gaussian() {
        const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
        const double u2 = u01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::uint64_t state_;
};

}  // namespace sonarsim
