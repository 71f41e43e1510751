#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace poolsim {

// mt19937_64 with hand-rolled distributions. The engine's output sequence is
// fixed by the standard; std::uniform_*/exponential_distribution are not
// bit-stable across standard libraries, so the transforms live here.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : eng_(mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1))) {}

    std::uint64_t next_u64() { return eng_(); }

    // Unbiased integer in [0, n). n must be > 0.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t max = ~0ULL;
        const std::uint64_t reject_span = (max % n + 1) % n; // 2^64 mod n
        std::uint64_t x = next_u64();
        while (reject_span != 0 && x > max - reject_span)
            x = next_u64();
        return x % n;
    }

    // Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Exponential with the given mean; exact 0 is possible, infinity is not.
    double exponential(double mean) { return -mean * std::log1p(-uniform01()); }

private:
    // splitmix64 finalizer; decorrelates (seed, stream) pairs.
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 eng_;
};

} // namespace poolsim
