#pragma once

#include <cstdint>
#include <cmath>

#include "vec.hpp"

namespace asymwit {

/// SplitMix64 finalizer. Used both to seed the main generator and to derive
/// independent substreams.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Stream-splitting rule: a work item tagged (a, b, c) under a user seed gets
/// the stream mix64(mix64(mix64(mix64(seed) ^ a) ^ b) ^ c). Restarts use
/// (permutation, restart index), simulation cells use (x, y), so results do
/// not depend on the order in which work items execute.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a,
                                   std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = mix64(seed);
    s = mix64(s ^ a);
    s = mix64(s ^ b);
    s = mix64(s ^ c);
    return s;
}

/// xoshiro256** seeded via SplitMix64. Deterministic across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t stream) {
        std::uint64_t sm = stream;
        for (auto& w : state_) w = mix64(sm = mix64(sm));
        state_[0] |= 1ull;  // avoid the all-zero state
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

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform direction on the unit sphere.
    BlochVector unit_vector() {
        const double z = 2.0 * uniform01() - 1.0;
        const double phi = 2.0 * 3.14159265358979323846 * uniform01();
        const double r = std::sqrt(std::fmax(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

    /// Uniform point in the closed unit ball.
    BlochVector ball_vector() {
        return std::cbrt(uniform01()) * unit_vector();
    }

    /// Binomial(n, p) by counting inversion draws u < p from this stream.
    long long binomial(long long n, double p) {
        long long zeros = 0;
        for (long long i = 0; i < n; ++i)
            if (uniform01() < p) ++zeros;
        return zeros;
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace asymwit
