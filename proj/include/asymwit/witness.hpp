#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "bloch.hpp"

namespace asymwit {

inline constexpr double kPi = 3.14159265358979323846;

using ExpectationTable = std::array<std::array<double, 6>, 6>;
using ProbabilityTable = std::array<std::array<double, 6>, 6>;

/// Pairwise dot products of the three unit target Bloch vectors.
struct TargetTriple {
    double cos12 = 0.0;
    double cos13 = 0.0;
    double cos23 = 0.0;
};

/// Bias triple plus the derived 6x6 coefficient matrix. Rows index
/// preparations, columns index measurements.
struct WitnessSpec {
    double omega12 = 0.5;
    double omega13 = 0.5;
    double omega23 = 0.5;
    std::array<std::array<double, 6>, 6> w{};
};

/// Index layout of one biased three-state block inside the 6x6 witness.
/// The block certifies preparations (a, b); `aux` is its auxiliary
/// preparation, anti-aligned with measurement `m_sum` in the ideal
/// realization. Column m_sum carries the omega weights, column m_diff the
/// (1-omega) weights.
struct PairLayout {
    int a, b;
    int aux;
    int m_sum;
    int m_diff;
};

inline constexpr std::array<PairLayout, 3> kPairs{{
    {0, 1, 3, 0, 1},  // pair (1,2)
    {0, 2, 4, 2, 3},  // pair (1,3)
    {1, 2, 5, 4, 5},  // pair (2,3)
}};

/// Bias reproducing a target dot product cos(alpha) between the two certified
/// preparations. Evaluates the root of the bias/angle relation lying in
/// [0, 1] in the division-safe form (1+c) / (1+c + sqrt(1-c^2)).
inline double omega_from_cos(double c) {
    if (!(std::fabs(c) <= 1.0))
        throw std::invalid_argument("omega_from_cos: cosine outside [-1, 1]");
    const double opc = 1.0 + c;
    if (opc == 0.0) return 0.0;  // antipodal pair
    return opc / (opc + std::sqrt((1.0 - c) * opc));
}

/// Dot product of the two certified preparations self-tested by bias omega:
/// (2w - 1) / (w^2 + (1-w)^2). Monotone increasing from -1 at w=0 to +1 at
/// w=1.
inline double cos_from_omega(double w) {
    return (2.0 * w - 1.0) / (w * w + (1.0 - w) * (1.0 - w));
}

/// One-bit (classical) bound of the biased block: 2-w below w=1/2, 3w above.
inline double i3_classical_bound(double w) {
    return w <= 0.5 ? 2.0 - w : 3.0 * w;
}

/// Qubit maximum of the biased block: 2 sqrt(w^2 + (1-w)^2) + w.
inline double i3_quantum_max(double w) {
    return 2.0 * std::sqrt(w * w + (1.0 - w) * (1.0 - w)) + w;
}

/// Maximum of the biased block over the auxiliary state and both observables
/// when the two certified preparations are held fixed (mixed states allowed):
/// w |n1 + n2| + (1-w) |n1 - n2| + w.
inline double i3_conditional_max(double w, BlochVector n1, BlochVector n2) {
    return w * norm(n1 + n2) + (1.0 - w) * norm(n1 - n2) + w;
}

struct I3Preparations {
    BlochVector n1, n2, n3;
};

/// The pure preparations saturating the block maximum for orthonormal
/// measurement axes m1, m2:
///   n1 = (w m1 + (1-w) m2) / r,  n2 = (w m1 - (1-w) m2) / r,  n3 = -m1,
/// with r = sqrt(w^2 + (1-w)^2).
inline I3Preparations optimal_preparations(double w, BlochVector m1, BlochVector m2) {
    if (w < 0.0 || w > 1.0)
        throw std::invalid_argument("optimal_preparations: omega outside [0, 1]");
    if (std::fabs(norm(m1) - 1.0) > 1e-9 || std::fabs(norm(m2) - 1.0) > 1e-9)
        throw std::invalid_argument("optimal_preparations: axes must be unit vectors");
    if (std::fabs(dot(m1, m2)) > 1e-9)
        throw std::invalid_argument("optimal_preparations: axes must be orthogonal");
    const double r = std::sqrt(w * w + (1.0 - w) * (1.0 - w));
    return I3Preparations{(1.0 / r) * (w * m1 + (1.0 - w) * m2),
                          (1.0 / r) * (w * m1 - (1.0 - w) * m2), -m1};
}

/// Value of one biased block for explicit states and observables:
/// w (E_a1 + E_b1 - E_aux1) + (1-w)(E_a2 - E_b2).
inline double i3_block_value(double w, BlochVector n_a, BlochVector n_b,
                             BlochVector n_aux, const Observable& first,
                             const Observable& second) {
    return w * (expectation(n_a, first) + expectation(n_b, first) -
                expectation(n_aux, first)) +
           (1.0 - w) * (expectation(n_a, second) - expectation(n_b, second));
}

inline double gram_det(const TargetTriple& t) {
    return 1.0 + 2.0 * t.cos12 * t.cos13 * t.cos23 - t.cos12 * t.cos12 -
           t.cos13 * t.cos13 - t.cos23 * t.cos23;
}

/// Validates realizability (Gram matrix PSD) and non-degeneracy: no pair
/// perfectly aligned, at most one pair perfectly anti-aligned.
inline TargetTriple target_from_cosines(double c12, double c13, double c23) {
    for (double c : {c12, c13, c23}) {
        if (!std::isfinite(c) || std::fabs(c) > 1.0 + 1e-12)
            throw std::invalid_argument("target: cosine outside [-1, 1]");
    }
    TargetTriple t{std::fmin(1.0, std::fmax(-1.0, c12)),
                   std::fmin(1.0, std::fmax(-1.0, c13)),
                   std::fmin(1.0, std::fmax(-1.0, c23))};
    int aligned = 0, antipodal = 0;
    for (double c : {t.cos12, t.cos13, t.cos23}) {
        if (c >= 1.0 - 1e-12) ++aligned;
        if (c <= -1.0 + 1e-12) ++antipodal;
    }
    if (aligned > 0)
        throw std::invalid_argument("target: perfectly aligned pair is degenerate");
    if (antipodal > 1)
        throw std::invalid_argument("target: more than one anti-aligned pair");
    if (gram_det(t) < -1e-9)
        throw std::invalid_argument("target: cosines not realizable in 3-space");
    return t;
}

/// Angles in degrees; reflex angles are fine since only the cosine matters.
inline TargetTriple target_from_angles_deg(double a12, double a13, double a23) {
    const auto c = [](double deg) { return std::cos(deg * kPi / 180.0); };
    return target_from_cosines(c(a12), c(a13), c(a23));
}

inline std::array<double, 3> target_angles_deg(const TargetTriple& t) {
    const auto a = [](double c) { return std::acos(std::fmin(1.0, std::fmax(-1.0, c))) * 180.0 / kPi; };
    return {a(t.cos12), a(t.cos13), a(t.cos23)};
}

/// Unit vectors realizing the target dot products. The first state is +z and
/// the anchor pair spans the x-z plane.
inline std::array<BlochVector, 3> embed_target(const TargetTriple& t) {
    const BlochVector e3{0, 0, 1};
    if (std::fabs(t.cos12) < 1.0 - 1e-12) {
        const double s12 = std::sqrt((1.0 - t.cos12) * (1.0 + t.cos12));
        const BlochVector n2{s12, 0, t.cos12};
        const double x = (t.cos23 - t.cos12 * t.cos13) / s12;
        const double y2 = 1.0 - t.cos13 * t.cos13 - x * x;
        const BlochVector n3{x, std::sqrt(std::fmax(0.0, y2)), t.cos13};
        return {e3, n2, n3};
    }
    // cos12 = -1: the second state is forced to -z, anchor on pair (1,3).
    const double s13 = std::sqrt((1.0 - t.cos13) * (1.0 + t.cos13));
    return {e3, -e3, BlochVector{s13, 0, t.cos13}};
}

/// Assembles the coefficient matrix for an explicit bias triple. With all
/// biases interior the matrix has 15 nonzero cells.
inline WitnessSpec make_witness_spec(double w12, double w13, double w23) {
    for (double w : {w12, w13, w23})
        if (!(w >= 0.0 && w <= 1.0))
            throw std::invalid_argument("witness: omega outside [0, 1]");
    WitnessSpec spec;
    spec.omega12 = w12;
    spec.omega13 = w13;
    spec.omega23 = w23;
    const std::array<double, 3> omegas{w12, w13, w23};
    for (int p = 0; p < 3; ++p) {
        const PairLayout& lay = kPairs[p];
        const double w = omegas[p];
        spec.w[lay.a][lay.m_sum] = w;
        spec.w[lay.b][lay.m_sum] = w;
        spec.w[lay.aux][lay.m_sum] = -w;
        spec.w[lay.a][lay.m_diff] = 1.0 - w;
        spec.w[lay.b][lay.m_diff] = -(1.0 - w);
    }
    return spec;
}

/// Builds the witness self-testing a target triple: biases from the pair
/// cosines.
inline WitnessSpec build_witness(const TargetTriple& target) {
    return make_witness_spec(omega_from_cos(target.cos12),
                             omega_from_cos(target.cos13),
                             omega_from_cos(target.cos23));
}

inline std::array<double, 3> omegas_of(const WitnessSpec& s) {
    return {s.omega12, s.omega13, s.omega23};
}

/// Frobenius inner product of the coefficient matrix and an expectation
/// table. Cells with zero coefficient are skipped, so unused entries may
/// hold NaN.
inline double i6_value(const WitnessSpec& spec, const ExpectationTable& e) {
    double acc = 0.0;
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y)
            if (spec.w[x][y] != 0.0) acc += spec.w[x][y] * e[x][y];
    return acc;
}

/// Block value extracted from a full expectation table.
inline double i3_pair_value(const WitnessSpec& spec, const ExpectationTable& e,
                            int pair) {
    const PairLayout& lay = kPairs[pair];
    double acc = 0.0;
    for (auto [x, y] : {std::array<int, 2>{lay.a, lay.m_sum},
                        std::array<int, 2>{lay.b, lay.m_sum},
                        std::array<int, 2>{lay.aux, lay.m_sum},
                        std::array<int, 2>{lay.a, lay.m_diff},
                        std::array<int, 2>{lay.b, lay.m_diff}}) {
        if (spec.w[x][y] != 0.0) acc += spec.w[x][y] * e[x][y];
    }
    return acc;
}

/// Overall quantum maximum: sum of the per-pair block maxima. Tight; the
/// saturating realization is built by scenario_from_targets.
inline double q_max(const WitnessSpec& spec) {
    return i3_quantum_max(spec.omega12) + i3_quantum_max(spec.omega13) +
           i3_quantum_max(spec.omega23);
}

}  // namespace asymwit
