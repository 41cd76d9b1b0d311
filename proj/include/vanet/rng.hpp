#pragma once

#include <cstdint>
#include <string_view>

namespace vanet {

/// Pinned portable PRNG for all stochastic operations.
///
/// xoshiro256** seeded through splitmix64. Every draw is defined in terms
/// of uint64 arithmetic only, so a given seed produces the same stream on
/// every platform and compiler. Distributions (uniform, exponential,
/// Poisson) are implemented here rather than taken from <random> because
/// the standard distributions are not bit-reproducible across libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = splitmix64_next(s);
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 bits of precision.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + next_double() * (hi - lo);
    }

    /// Uniform integer in [0, m), m >= 1. Unbiased via rejection.
    std::uint64_t bounded(std::uint64_t m) {
        const std::uint64_t threshold = (0 - m) % m;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % m;
        }
    }

    /// Exponential with the given rate (mean 1/rate).
    double exponential(double rate);

    /// Poisson-distributed count with the given mean.
    ///
    /// Knuth's product method, splitting large means into independent
    /// Poisson summands so the e^-mean factor never underflows.
    std::uint64_t poisson(double mean);

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix64_next(std::uint64_t& s) {
        s += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
};

/// Stateless 64-bit finalizer (splitmix64 output function).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Derives an independent child seed from (master, purpose tag, index).
///
/// All stochastic operations draw their seeds through this, so trials and
/// streets are reorderable and can run concurrently without sharing RNG
/// state.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                    std::uint64_t index = 0) {
    const std::uint64_t a = mix64(master ^ fnv1a64(tag));
    return mix64(a ^ (index * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL));
}

} // namespace vanet
