#pragma once

#include <array>
#include <optional>
#include <stdexcept>

#include "vec.hpp"

namespace asymwit {

// State norms may exceed 1 by up to this much (accumulated rounding) and are
// clamped back to the ball; anything larger is rejected.
inline constexpr double kStateNormSlack = 1e-12;

// Measurement axes must be unit within this tolerance.
inline constexpr double kAxisNormTol = 1e-12;

// Default tolerance of the mirror-symmetry predicate, applied to squared
// side lengths.
inline constexpr double kMirrorTol = 1e-9;

/// Two-outcome qubit observable B = bias*I + (1-|bias|) axis.sigma.
/// bias = 0 is a rank-1 projective measurement; |bias| = 1 is degenerate.
struct Observable {
    double bias = 0.0;
    BlochVector axis{0, 0, 1};
};

/// Validates a preparation: finite, inside the Bloch ball up to the norm
/// slack (then clamped back onto it).
inline BlochVector make_state(BlochVector n) {
    if (!is_finite(n)) throw std::invalid_argument("state: non-finite Bloch vector");
    const double len = norm(n);
    if (len > 1.0 + kStateNormSlack)
        throw std::invalid_argument("state: Bloch vector norm exceeds 1");
    if (len > 1.0) n = (1.0 / len) * n;
    return n;
}

/// Validates an observable: |bias| <= 1 and a unit axis (renormalized when
/// within tolerance).
inline Observable make_observable(double bias, BlochVector axis) {
    if (!std::isfinite(bias) || std::fabs(bias) > 1.0 + 1e-12)
        throw std::invalid_argument("observable: bias must lie in [-1, 1]");
    if (!is_finite(axis)) throw std::invalid_argument("observable: non-finite axis");
    const double len = norm(axis);
    if (std::fabs(len - 1.0) > kAxisNormTol)
        throw std::invalid_argument("observable: axis must be a unit vector");
    return Observable{std::fmin(1.0, std::fmax(-1.0, bias)), (1.0 / len) * axis};
}

/// The three preparations whose configuration is being certified.
struct ConfigTriple {
    BlochVector n1, n2, n3;
};

inline ConfigTriple make_config(BlochVector n1, BlochVector n2, BlochVector n3) {
    return ConfigTriple{make_state(n1), make_state(n2), make_state(n3)};
}

/// Mirror-symmetry cases: the first index is the apex whose two adjacent
/// sides are compared (and constrained equal in the mirror bound).
enum class Permutation : int { p123 = 0, p213 = 1, p312 = 2 };

/// 0-based (apex, leg, leg) indices for a permutation.
constexpr std::array<int, 3> apex_legs(Permutation p) {
    switch (p) {
        case Permutation::p213: return {1, 0, 2};
        case Permutation::p312: return {2, 0, 1};
        default: return {0, 1, 2};
    }
}

constexpr const char* to_string(Permutation p) {
    switch (p) {
        case Permutation::p213: return "213";
        case Permutation::p312: return "312";
        default: return "123";
    }
}

inline constexpr std::array<Permutation, 3> kPermutations{
    Permutation::p123, Permutation::p213, Permutation::p312};

/// E = bias + (1 - |bias|) n.m, i.e. P(0) - P(1).
inline double expectation(BlochVector n, const Observable& obs) {
    if (!is_finite(n) || !is_finite(obs.axis) || !std::isfinite(obs.bias))
        throw std::invalid_argument("expectation: non-finite input");
    return obs.bias + (1.0 - std::fabs(obs.bias)) * dot(n, obs.axis);
}

/// Outcome probability (1 + s E)/2 with s = +1 for outcome 0, -1 for outcome 1.
/// The two outcomes sum to exactly 1.
inline double born_probability(BlochVector n, const Observable& obs, int outcome) {
    if (outcome != 0 && outcome != 1)
        throw std::invalid_argument("born_probability: outcome must be 0 or 1");
    double e = expectation(n, obs);
    e = std::fmin(1.0, std::fmax(-1.0, e));
    return 0.5 * (1.0 + (outcome == 0 ? e : -e));
}

/// Trace distance between two qubit states: half the Euclidean distance of
/// their Bloch vectors.
inline double trace_distance(BlochVector n1, BlochVector n2) {
    return 0.5 * norm(n1 - n2);
}

/// Returns the first permutation (checked in order 123, 213, 312) whose two
/// apex-adjacent squared side lengths agree within tol, or nullopt when the
/// configuration is asymmetric. Squared norms sidestep square-root noise.
inline std::optional<Permutation> is_mirror_symmetric(const ConfigTriple& cfg,
                                                      double tol = kMirrorTol) {
    if (tol < 0.0) throw std::invalid_argument("is_mirror_symmetric: tol < 0");
    const std::array<BlochVector, 3> n{cfg.n1, cfg.n2, cfg.n3};
    for (Permutation p : kPermutations) {
        const auto [i, j, k] = apex_legs(p);
        const double sij = norm_squared(n[i] - n[j]);
        const double sik = norm_squared(n[i] - n[k]);
        if (std::fabs(sij - sik) <= tol) return p;
    }
    return std::nullopt;
}

}  // namespace asymwit
