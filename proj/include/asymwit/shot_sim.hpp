#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "rng.hpp"
#include "witness.hpp"

namespace asymwit {

/// Physical realization to evaluate or sample: six preparations, six
/// two-outcome observables.
struct Scenario {
    std::array<BlochVector, 6> preparations{};
    std::array<Observable, 6> observables{};
};

struct ShotPlan {
    long long shots_per_cell = 8192;  // N per sampled (x, y) cell
    std::uint64_t seed = 1;
    double depolarizing_p = 0.0;  // preparation contraction n -> (1-p) n
    bool sample_all_cells = false;  // default: only cells with nonzero coefficient
};

struct CellCounts {
    long long zeros = 0;
    long long ones = 0;
    bool sampled = false;
};

struct ShotResult {
    std::array<std::array<CellCounts, 6>, 6> counts{};
    ExpectationTable empirical{};  // 0 in unsampled cells
    std::array<double, 3> per_pair_i3{};
    double i6_estimate = 0.0;
    double sigma = 0.0;
};

/// Exact expectation table of a scenario.
inline ExpectationTable exact_expectations(const Scenario& sc) {
    ExpectationTable e{};
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y)
            e[x][y] = expectation(sc.preparations[x], sc.observables[y]);
    return e;
}

inline Scenario depolarized(const Scenario& sc, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("depolarizing_p outside [0, 1]");
    Scenario out = sc;
    for (auto& n : out.preparations) n = (1.0 - p) * n;
    return out;
}

/// Standard deviation of the witness estimate from binomial counting noise:
/// sigma^2 = (4/N) sum_xy W_xy^2 P(0|x,y) (1 - P(0|x,y)).
inline double i6_sigma(const WitnessSpec& spec, const ProbabilityTable& p0,
                       long long shots) {
    if (shots < 1) throw std::invalid_argument("i6_sigma: shots < 1");
    double var = 0.0;
    for (int x = 0; x < 6; ++x) {
        for (int y = 0; y < 6; ++y) {
            const double w = spec.w[x][y];
            if (w == 0.0) continue;
            double p = p0[x][y];
            if (!(p >= -1e-9 && p <= 1.0 + 1e-9))
                throw std::invalid_argument("i6_sigma: probability outside [0, 1]");
            p = std::fmin(1.0, std::fmax(0.0, p));
            var += w * w * p * (1.0 - p);
        }
    }
    return std::sqrt(4.0 * var / static_cast<double>(shots));
}

/// Finite-shot run of the witness experiment. Every cell with a nonzero
/// coefficient draws its outcome-0 count from Binomial(N, P(0|x,y)) on an RNG
/// stream derived from (seed, x, y), so identical plans give identical
/// results regardless of sampling order. The reported sigma uses the model
/// probabilities, not the empirical ones.
inline ShotResult simulate(const Scenario& scenario, const WitnessSpec& spec,
                           const ShotPlan& plan) {
    if (plan.shots_per_cell < 1) throw std::invalid_argument("simulate: shots < 1");
    const Scenario noisy = depolarized(scenario, plan.depolarizing_p);
    ProbabilityTable p0{};
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y)
            p0[x][y] = born_probability(noisy.preparations[x], noisy.observables[y], 0);

    ShotResult res;
    const long long n = plan.shots_per_cell;
    for (int x = 0; x < 6; ++x) {
        for (int y = 0; y < 6; ++y) {
            if (spec.w[x][y] == 0.0 && !plan.sample_all_cells) continue;
            Rng rng(derive_stream(plan.seed, static_cast<std::uint64_t>(x),
                                  static_cast<std::uint64_t>(y)));
            const long long zeros = rng.binomial(n, p0[x][y]);
            res.counts[x][y] = CellCounts{zeros, n - zeros, true};
            res.empirical[x][y] =
                static_cast<double>(2 * zeros - n) / static_cast<double>(n);
        }
    }
    for (int pair = 0; pair < 3; ++pair)
        res.per_pair_i3[pair] = i3_pair_value(spec, res.empirical, pair);
    res.i6_estimate = i6_value(spec, res.empirical);
    res.sigma = i6_sigma(spec, p0, n);
    return res;
}

/// Builds the scenario that saturates the overall maximum for a target: the
/// three certified states realize the target dot products, each pair's
/// measurement axes align with the sum and difference of its states, and
/// each auxiliary anti-aligns with its pair's sum-axis. All observables are
/// rank-1 projective (zero bias).
inline Scenario scenario_from_targets(const TargetTriple& target) {
    const std::array<BlochVector, 3> certified = embed_target(target);
    Scenario sc;
    for (int i = 0; i < 3; ++i) sc.preparations[i] = certified[i];
    for (const PairLayout& lay : kPairs) {
        const BlochVector sum = certified[lay.a] + certified[lay.b];
        const BlochVector diff = certified[lay.a] - certified[lay.b];
        // diff cannot vanish (aligned pairs are rejected as targets); sum
        // vanishes only for the one admissible antipodal pair, whose block
        // carries zero bias weight, so any orthogonal axis is optimal there.
        const BlochVector m_diff = normalized_or(diff, BlochVector{0, 0, 1});
        const BlochVector m_sum = normalized_or(sum, unit_orthogonal_to(m_diff));
        sc.observables[lay.m_sum] = Observable{0.0, m_sum};
        sc.observables[lay.m_diff] = Observable{0.0, m_diff};
        sc.preparations[lay.aux] = -m_sum;
    }
    return sc;
}

}  // namespace asymwit
