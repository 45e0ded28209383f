#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rng.hpp"
#include "witness.hpp"

namespace asymwit {

/// One mirror-symmetry case of the constrained bound: maximize the witness
/// subject to n_i.n_j = n_i.n_k for the apex i given by the permutation.
struct MirrorProblem {
    WitnessSpec spec;
    Permutation perm = Permutation::p123;
};

struct OptimizerConfig {
    int restarts = 64;
    int max_iterations = 10000;
    double improvement_tol = 1e-12;
    std::uint64_t seed = 1;
};

inline void validate(const OptimizerConfig& cfg) {
    if (cfg.restarts < 1) throw std::invalid_argument("optimizer: restarts < 1");
    if (cfg.max_iterations < 1) throw std::invalid_argument("optimizer: max_iterations < 1");
    if (!(cfg.improvement_tol > 0.0)) throw std::invalid_argument("optimizer: improvement_tol <= 0");
}

struct AscentResult {
    double value = -std::numeric_limits<double>::infinity();
    std::array<BlochVector, 3> states{};
    std::array<BlochVector, 6> measurements{};
    bool converged = false;
    bool used_fallback = false;
    int iterations = 0;
};

struct PermutationBound {
    AscentResult best;
    int restarts_agreeing = 0;
};

struct BoundsReport {
    double q_max = 0.0;
    std::array<double, 3> q_mirror_perm{};  // order 123, 213, 312
    double q_mirror = 0.0;
    double delta = 0.0;
    Permutation best_permutation = Permutation::p123;
    std::array<BlochVector, 3> best_states{};
    std::array<BlochVector, 6> best_measurements{};
    std::array<bool, 3> perm_converged{};
    bool converged = false;
    bool used_fallback = false;
    int restarts_agreeing = 0;
};

/// Witness value of explicit states and measurement axes with the three
/// auxiliaries eliminated: the constant bias sum plus the six bilinear terms.
inline double mirror_objective(const WitnessSpec& s,
                               const std::array<BlochVector, 3>& n,
                               const std::array<BlochVector, 6>& m) {
    return s.omega12 + s.omega13 + s.omega23 +
           s.omega12 * dot(n[0] + n[1], m[0]) +
           (1.0 - s.omega12) * dot(n[0] - n[1], m[1]) +
           s.omega13 * dot(n[0] + n[2], m[2]) +
           (1.0 - s.omega13) * dot(n[0] - n[2], m[3]) +
           s.omega23 * dot(n[1] + n[2], m[4]) +
           (1.0 - s.omega23) * dot(n[1] - n[2], m[5]);
}

/// Same objective with every measurement set to its aligned optimum, leaving
/// a function of the states alone.
inline double mirror_objective_states(const WitnessSpec& s, BlochVector n1,
                                      BlochVector n2, BlochVector n3) {
    return s.omega12 + s.omega13 + s.omega23 +
           s.omega12 * norm(n1 + n2) + (1.0 - s.omega12) * norm(n1 - n2) +
           s.omega13 * norm(n1 + n3) + (1.0 - s.omega13) * norm(n1 - n3) +
           s.omega23 * norm(n2 + n3) + (1.0 - s.omega23) * norm(n2 - n3);
}

namespace detail {

/// Exact measurement block: each axis aligns with its coefficient vector.
/// A numerically zero coefficient keeps the previous axis.
inline void update_measurements(const WitnessSpec& s,
                                const std::array<BlochVector, 3>& n,
                                std::array<BlochVector, 6>& m) {
    m[0] = normalized_or(s.omega12 * (n[0] + n[1]), m[0]);
    m[1] = normalized_or((1.0 - s.omega12) * (n[0] - n[1]), m[1]);
    m[2] = normalized_or(s.omega13 * (n[0] + n[2]), m[2]);
    m[3] = normalized_or((1.0 - s.omega13) * (n[0] - n[2]), m[3]);
    m[4] = normalized_or(s.omega23 * (n[1] + n[2]), m[4]);
    m[5] = normalized_or((1.0 - s.omega23) * (n[1] - n[2]), m[5]);
}

/// Linear coefficient vectors of the three states given fixed measurements.
inline std::array<BlochVector, 3> state_coefficients(
    const WitnessSpec& s, const std::array<BlochVector, 6>& m) {
    return {
        s.omega12 * m[0] + (1.0 - s.omega12) * m[1] + s.omega13 * m[2] +
            (1.0 - s.omega13) * m[3],
        s.omega12 * m[0] - (1.0 - s.omega12) * m[1] + s.omega23 * m[4] +
            (1.0 - s.omega23) * m[5],
        s.omega13 * m[2] - (1.0 - s.omega13) * m[3] + s.omega23 * m[4] -
            (1.0 - s.omega23) * m[5],
    };
}

/// Exact apex block: maximize v.n over the ball intersected with the plane
/// n.(leg_j - leg_k) = 0. Optimum is the normalized in-plane projection of v.
inline BlochVector apex_update(BlochVector v, BlochVector leg_j,
                               BlochVector leg_k, BlochVector prev) {
    const BlochVector d = leg_j - leg_k;
    if (norm_squared(d) < 1e-28) return normalized_or(v, prev);
    const BlochVector dh = (1.0 / norm(d)) * d;
    return normalized_or(v - dot(v, dh) * dh, prev);
}

/// Exact leg block: maximize v.n over the ball slice n_apex.n = n_apex.other,
/// a disk whose rim is the circle at height a = apex_hat.other along the apex
/// axis. Optimum sits on the rim in the direction of v's perpendicular part.
/// The constraint is always satisfiable while |other| <= 1; the penalized
/// fallback only fires after upstream numerical damage.
inline BlochVector leg_update(BlochVector v, BlochVector apex,
                              BlochVector other, BlochVector prev,
                              bool& fallback) {
    if (norm_squared(apex) < 1e-28) return normalized_or(v, prev);
    const BlochVector ah = (1.0 / norm(apex)) * apex;
    double a = dot(ah, other);
    if (std::fabs(a) > 1.0 + 1e-9) {
        fallback = true;
        const double resid = dot(apex, prev) - dot(apex, other);
        BlochVector cand = prev + 0.05 * (v - resid * apex);
        const double len = norm(cand);
        return len > 1.0 ? (1.0 / len) * cand : cand;
    }
    a = std::fmin(1.0, std::fmax(-1.0, a));
    const BlochVector vperp = v - dot(v, ah) * ah;
    BlochVector u;
    if (norm_squared(vperp) >= 1e-28) {
        u = (1.0 / norm(vperp)) * vperp;
    } else {
        u = unit_perp_component(prev, ah);  // direction is a tie; keep the old one
    }
    return a * ah + std::sqrt(std::fmax(0.0, 1.0 - a * a)) * u;
}

/// Exact joint block over both legs: with the apex fixed, the legs share one
/// height t along the apex axis (the constraint) and otherwise move freely on
/// their rims, giving the objective t A + sqrt(1-t^2) B with
/// A = apex_hat.(v_j + v_k) and B the summed perpendicular coefficient norms.
/// The optimal height is t* = A / sqrt(A^2 + B^2). The individual leg steps
/// keep t pinned to the other leg's current height, so this is the only step
/// that moves the shared latitude directly.
inline void joint_leg_update(BlochVector v_j, BlochVector v_k,
                             const BlochVector& apex, BlochVector& leg_j,
                             BlochVector& leg_k) {
    if (norm_squared(apex) < 1e-28) return;
    const BlochVector ah = (1.0 / norm(apex)) * apex;
    const BlochVector pj = v_j - dot(v_j, ah) * ah;
    const BlochVector pk = v_k - dot(v_k, ah) * ah;
    const double a = dot(ah, v_j + v_k);
    const double b = norm(pj) + norm(pk);
    const double r = std::sqrt(a * a + b * b);
    if (r < 1e-14) return;  // objective flat in the legs; keep them
    const double t = a / r;
    const double s = std::sqrt(std::fmax(0.0, 1.0 - t * t));
    const BlochVector uj = norm_squared(pj) >= 1e-28 ? (1.0 / norm(pj)) * pj
                                                     : unit_perp_component(leg_j, ah);
    const BlochVector uk = norm_squared(pk) >= 1e-28 ? (1.0 / norm(pk)) * pk
                                                     : unit_perp_component(leg_k, ah);
    leg_j = t * ah + s * uj;
    leg_k = t * ah + s * uk;
}

inline double gram_pair_term(double w, double d) {
    return w * std::sqrt(std::fmax(0.0, 2.0 + 2.0 * d)) +
           (1.0 - w) * std::sqrt(std::fmax(0.0, 2.0 - 2.0 * d));
}

/// Measurement-eliminated objective of pure states as a function of their
/// Gram matrix alone: the legs' mutual dot g and the shared apex-leg dot h.
/// Realizable in the ball iff g >= 2 h^2 - 1.
inline double gram_objective(const WitnessSpec& s, Permutation perm, double g,
                             double h) {
    double d01, d02, d12;
    switch (perm) {
        case Permutation::p213: d01 = h; d12 = h; d02 = g; break;
        case Permutation::p312: d02 = h; d12 = h; d01 = g; break;
        default: d01 = h; d02 = h; d12 = g; break;
    }
    return s.omega12 + s.omega13 + s.omega23 + gram_pair_term(s.omega12, d01) +
           gram_pair_term(s.omega13, d02) + gram_pair_term(s.omega23, d12);
}

/// Ridge polish: compass search over the two Gram coordinates, accepting
/// improvements only. Block updates leave a slow zigzag direction along the
/// constraint ridge; this finishes the climb to the local pure-state optimum.
/// Returns the polished value and writes the canonical-frame states.
inline double gram_polish(const WitnessSpec& s, Permutation perm, double& g,
                          double& h) {
    g = std::fmin(1.0, std::fmax(2.0 * h * h - 1.0, g));
    double best = gram_objective(s, perm, g, h);
    for (double step = 0.1; step >= 1e-9; step *= 0.5) {
        for (int sweep = 0; sweep < 2; ++sweep) {
            for (int coord = 0; coord < 2; ++coord) {
                for (double sign : {+1.0, -1.0}) {
                    double gc = g, hc = h;
                    (coord == 0 ? gc : hc) += sign * step;
                    hc = std::fmin(1.0, std::fmax(-1.0, hc));
                    gc = std::fmin(1.0, std::fmax(-1.0, gc));
                    if (gc < 2.0 * hc * hc - 1.0) continue;
                    const double val = gram_objective(s, perm, gc, hc);
                    if (val > best) {
                        best = val;
                        g = gc;
                        h = hc;
                    }
                }
            }
        }
    }
    return best;
}

/// States in a canonical frame realizing the Gram coordinates: apex at +z,
/// both legs at height h, separated by the azimuth that yields dot g.
inline std::array<BlochVector, 3> states_from_gram(Permutation perm, double g,
                                                   double h) {
    const auto [ai, lj, lk] = apex_legs(perm);
    const double s2 = 1.0 - h * h;
    const double sh = std::sqrt(std::fmax(0.0, s2));
    const double cphi = s2 < 1e-15 ? 1.0
                                   : std::fmin(1.0, std::fmax(-1.0, (g - h * h) / s2));
    const double sphi = std::sqrt(std::fmax(0.0, 1.0 - cphi * cphi));
    std::array<BlochVector, 3> n;
    n[ai] = {0, 0, 1};
    n[lj] = {sh, 0, h};
    n[lk] = {sh * cphi, sh * sphi, h};
    return n;
}

/// Projects both legs onto the unit sphere with a common apex-axis height so
/// the start of every restart already satisfies the mirror constraint.
inline void symmetrize_legs(const BlochVector& apex, BlochVector& u, BlochVector& v) {
    if (norm_squared(apex) < 1e-28) return;
    const BlochVector ah = (1.0 / norm(apex)) * apex;
    double t = 0.5 * (dot(ah, u) + dot(ah, v));
    t = std::fmin(1.0, std::fmax(-1.0, t));
    const double r = std::sqrt(std::fmax(0.0, 1.0 - t * t));
    u = t * ah + r * unit_perp_component(u, ah);
    v = t * ah + r * unit_perp_component(v, ah);
}

}  // namespace detail

/// One coordinate-ascent run from a random feasible start. Per iteration:
/// all six measurements (exact given states), then apex, then each leg, then
/// the legs' shared height (every step an exact block maximization), so the
/// objective never decreases. Stops when an iteration improves by less than
/// improvement_tol.
inline AscentResult ascend_single(const MirrorProblem& prob, std::uint64_t stream,
                                  const OptimizerConfig& cfg,
                                  std::vector<double>* value_trace = nullptr) {
    const auto [ai, lj, lk] = apex_legs(prob.perm);
    Rng rng(stream);
    std::array<BlochVector, 3> n{rng.unit_vector(), rng.unit_vector(), rng.unit_vector()};
    detail::symmetrize_legs(n[ai], n[lj], n[lk]);
    std::array<BlochVector, 6> m;
    for (auto& axis : m) axis = rng.unit_vector();
    detail::update_measurements(prob.spec, n, m);

    AscentResult res;
    double value = mirror_objective(prob.spec, n, m);
    if (value_trace) value_trace->push_back(value);
    for (int it = 1; it <= cfg.max_iterations; ++it) {
        detail::update_measurements(prob.spec, n, m);
        const auto v = detail::state_coefficients(prob.spec, m);
        n[ai] = detail::apex_update(v[ai], n[lj], n[lk], n[ai]);
        n[lj] = detail::leg_update(v[lj], n[ai], n[lk], n[lj], res.used_fallback);
        n[lk] = detail::leg_update(v[lk], n[ai], n[lj], n[lk], res.used_fallback);
        detail::joint_leg_update(v[lj], v[lk], n[ai], n[lj], n[lk]);
        const double next = mirror_objective(prob.spec, n, m);
        if (value_trace) value_trace->push_back(next);
        res.iterations = it;
        if (next - value < cfg.improvement_tol) {
            value = next;
            res.converged = true;
            break;
        }
        value = next;
    }

    // Iterates are pure with equal leg heights, so their Gram coordinates are
    // exact; polish there and keep the result only when it improves.
    double g = dot(n[lj], n[lk]);
    double h = 0.5 * (dot(n[ai], n[lj]) + dot(n[ai], n[lk]));
    detail::gram_polish(prob.spec, prob.perm, g, h);
    const auto polished = detail::states_from_gram(prob.perm, g, h);
    auto pm = m;
    detail::update_measurements(prob.spec, polished, pm);
    const double polished_value = mirror_objective(prob.spec, polished, pm);
    if (polished_value > value) {
        value = polished_value;
        n = polished;
        m = pm;
        if (value_trace) value_trace->push_back(polished_value);
    }

    res.value = value;
    res.states = n;
    res.measurements = m;
    return res;
}

/// Multi-start bound for one permutation. Restart r draws its RNG stream
/// from (seed, permutation, r); the merge keeps the maximum value, ties
/// resolved in favor of the lowest restart index, so any evaluation order
/// gives the same result.
inline PermutationBound q_mirror_ijk(const MirrorProblem& prob,
                                     const OptimizerConfig& cfg) {
    validate(cfg);
    std::vector<double> values(static_cast<std::size_t>(cfg.restarts));
    PermutationBound out;
    for (int r = 0; r < cfg.restarts; ++r) {
        const std::uint64_t stream =
            derive_stream(cfg.seed, static_cast<std::uint64_t>(prob.perm),
                          static_cast<std::uint64_t>(r));
        AscentResult run = ascend_single(prob, stream, cfg);
        values[static_cast<std::size_t>(r)] = run.value;
        if (run.value > out.best.value) out.best = run;
    }
    for (double v : values)
        if (std::fabs(v - out.best.value) <= 1e-6) ++out.restarts_agreeing;
    return out;
}

/// Full report: all three permutation bounds, their maximum, and the gap to
/// the overall quantum maximum.
inline BoundsReport q_mirror(const WitnessSpec& spec, const OptimizerConfig& cfg) {
    BoundsReport rep;
    rep.q_max = q_max(spec);
    std::array<PermutationBound, 3> bounds;
    for (int p = 0; p < 3; ++p) {
        bounds[p] = q_mirror_ijk(MirrorProblem{spec, kPermutations[p]}, cfg);
        rep.q_mirror_perm[p] = bounds[p].best.value;
        rep.perm_converged[p] = bounds[p].best.converged;
    }
    int best = 0;
    for (int p = 1; p < 3; ++p)
        if (rep.q_mirror_perm[p] > rep.q_mirror_perm[best]) best = p;
    rep.q_mirror = rep.q_mirror_perm[best];
    rep.delta = rep.q_max - rep.q_mirror;
    rep.best_permutation = kPermutations[best];
    rep.best_states = bounds[best].best.states;
    rep.best_measurements = bounds[best].best.measurements;
    rep.restarts_agreeing = bounds[best].restarts_agreeing;
    rep.used_fallback = bounds[best].best.used_fallback;
    rep.converged = rep.perm_converged[0] && rep.perm_converged[1] && rep.perm_converged[2];
    return rep;
}

/// Grid oracle: an exhaustive pure-state scan that lower-bounds the
/// permutation bound from below and converges to it as the resolution grows.
/// Rotation freedom pins the apex at +z and the first leg in the x-z
/// half-plane; candidate polar-angle pairs passing a one-grid-cell mirror
/// filter are snapped to their common mean angle, so every evaluated
/// configuration satisfies the constraint exactly. The leg azimuth scans
/// [0, pi] only: the measurement-optimized objective is even in it.
inline double brute_force_q_mirror(const WitnessSpec& spec, Permutation perm,
                                   int grid_resolution) {
    if (grid_resolution < 12)
        throw std::invalid_argument("brute_force_q_mirror: resolution < 12");
    const auto [ai, lj, lk] = apex_legs(perm);
    const int res = grid_resolution;
    const double dtheta = kPi / (res - 1);
    const double filter = 1.01 * dtheta;
    double best = -std::numeric_limits<double>::infinity();
    std::array<BlochVector, 3> n;
    n[ai] = {0, 0, 1};
    for (int a = 0; a < res; ++a) {
        const double tj = a * dtheta;
        for (int b = a; b < res; ++b) {
            const double tk = b * dtheta;
            if (std::fabs(std::cos(tj) - std::cos(tk)) > filter) break;
            const double t = 0.5 * (tj + tk);
            const double st = std::sin(t), ct = std::cos(t);
            n[lj] = {st, 0, ct};
            for (int c = 0; c < res; ++c) {
                const double phi = c * dtheta;
                n[lk] = {st * std::cos(phi), st * std::sin(phi), ct};
                best = std::max(
                    best, mirror_objective_states(spec, n[0], n[1], n[2]));
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Gap optimization over target triples
// ---------------------------------------------------------------------------

struct GapSearchConfig {
    OptimizerConfig optimizer{};  // full strength, used for the final report
    int proposals = 24;           // random feasible targets
    int refine_candidates = 4;    // best proposals kept for local refinement
    int inner_restarts = 12;      // cheaper bound evaluations during search
    double initial_step = 0.4;    // radians
    double min_step = 1e-5;
    int sweeps_per_level = 2;
};

struct GapResult {
    TargetTriple target{};
    std::array<double, 3> angles_deg{};
    double delta = 0.0;
    BoundsReport report{};
    bool converged = false;
};

namespace detail {

/// Search coordinates: theta2, theta3, phi3 of the canonical embedding
/// u1 = +z, u2 = (sin t2, 0, cos t2), u3 from spherical angles. Any
/// parameter value yields a realizable cosine triple, including the
/// rank-deficient boundary where one pair turns antipodal.
struct GapParams {
    double theta2 = kPi / 2;
    double theta3 = kPi / 2;
    double phi3 = kPi;
};

inline TargetTriple gap_cosines(const GapParams& p) {
    const BlochVector u2{std::sin(p.theta2), 0.0, std::cos(p.theta2)};
    const BlochVector u3{std::sin(p.theta3) * std::cos(p.phi3),
                         std::sin(p.theta3) * std::sin(p.phi3),
                         std::cos(p.theta3)};
    // the dot of two computed unit vectors can poke past [-1, 1] by an ulp
    const double c23 = std::fmin(1.0, std::fmax(-1.0, dot(u2, u3)));
    return TargetTriple{std::cos(p.theta2), std::cos(p.theta3), c23};
}

inline std::uint64_t bits_of(double v) {
    std::uint64_t out;
    static_assert(sizeof(out) == sizeof(v));
    std::memcpy(&out, &v, sizeof(out));
    return out;
}

/// Deterministic function of (seed, params): the bound evaluation inside the
/// search must not depend on evaluation order.
inline double gap_delta(const GapParams& p, const GapSearchConfig& cfg) {
    const TargetTriple t = gap_cosines(p);
    int antipodal = 0;
    for (double c : {t.cos12, t.cos13, t.cos23}) {
        if (c >= 1.0 - 1e-12) return -std::numeric_limits<double>::infinity();
        if (c <= -1.0 + 1e-12) ++antipodal;
    }
    if (antipodal > 1) return -std::numeric_limits<double>::infinity();
    OptimizerConfig inner = cfg.optimizer;
    inner.restarts = cfg.inner_restarts;
    inner.seed = derive_stream(cfg.optimizer.seed, 0xDE17Aull, bits_of(p.theta2),
                               bits_of(p.theta3) ^ bits_of(p.phi3));
    return q_mirror(build_witness(t), inner).delta;
}

/// Coordinate perturbation with shrinking step on (theta2, theta3, phi3).
inline void gap_refine(GapParams& p, double& value, const GapSearchConfig& cfg) {
    for (double step = cfg.initial_step; step >= cfg.min_step; step *= 0.5) {
        for (int sweep = 0; sweep < cfg.sweeps_per_level; ++sweep) {
            for (int coord = 0; coord < 3; ++coord) {
                for (double sign : {+1.0, -1.0}) {
                    GapParams trial = p;
                    double* x = coord == 0 ? &trial.theta2
                              : coord == 1 ? &trial.theta3
                                           : &trial.phi3;
                    *x += sign * step;
                    if (coord < 2) {
                        *x = std::fmin(kPi, std::fmax(0.0, *x));
                    } else {
                        if (*x < 0.0) *x += 2.0 * kPi;
                        if (*x >= 2.0 * kPi) *x -= 2.0 * kPi;
                    }
                    const double trial_value = gap_delta(trial, cfg);
                    if (trial_value > value) {
                        value = trial_value;
                        p = trial;
                    }
                }
            }
        }
    }
}

/// One-parameter family living on the realizability boundary: the legs of
/// one pair exactly antipodal, cosines (cos psi, -cos psi, -1). The largest
/// gap sits in this family, which interior coordinate moves can approach but
/// never reach.
inline GapParams tied_params(double psi) {
    return GapParams{psi, kPi - psi, kPi};
}

inline void tied_refine(double& psi, double& value, const GapSearchConfig& cfg) {
    for (double step = 0.2; step >= cfg.min_step; step *= 0.5) {
        for (int sweep = 0; sweep < 2; ++sweep) {
            for (double sign : {+1.0, -1.0}) {
                const double trial = std::fmin(kPi - 0.01, std::fmax(0.01, psi + sign * step));
                const double tv = gap_delta(tied_params(trial), cfg);
                if (tv > value) {
                    value = tv;
                    psi = trial;
                }
            }
        }
    }
}

}  // namespace detail

/// Heuristic maximization of the gap over pure target triples: random
/// Gram-feasible proposals, shrinking-step coordinate refinement of the best
/// few, a scan-plus-refine of the antipodal boundary family, then a full
/// bound evaluation at the winner. Deterministic for a fixed seed.
inline GapResult optimize_gap(const GapSearchConfig& cfg) {
    validate(cfg.optimizer);
    if (cfg.proposals < 1) throw std::invalid_argument("optimize_gap: proposals < 1");

    struct Candidate {
        detail::GapParams params;
        double value = -std::numeric_limits<double>::infinity();
    };
    std::vector<Candidate> pool;
    Rng rng(derive_stream(cfg.optimizer.seed, 0x6A9AFull));
    for (int i = 0; i < cfg.proposals; ++i) {
        detail::GapParams p{rng.uniform(0.0, kPi), rng.uniform(0.0, kPi),
                            rng.uniform(0.0, 2.0 * kPi)};
        pool.push_back({p, detail::gap_delta(p, cfg)});
    }
    std::stable_sort(pool.begin(), pool.end(),
                     [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
    const int keep = std::min<int>(cfg.refine_candidates, static_cast<int>(pool.size()));

    Candidate best = pool.front();
    for (int i = 0; i < keep; ++i) {
        Candidate c = pool[static_cast<std::size_t>(i)];
        detail::gap_refine(c.params, c.value, cfg);
        if (c.value > best.value) best = c;
    }

    // Boundary family: coarse scan of the free angle followed by refinement.
    double best_psi = 0.0;
    double best_psi_value = -std::numeric_limits<double>::infinity();
    for (int i = 1; i < 36; ++i) {
        const double psi = i * kPi / 36.0;
        const double v = detail::gap_delta(detail::tied_params(psi), cfg);
        if (v > best_psi_value) {
            best_psi_value = v;
            best_psi = psi;
        }
    }
    detail::tied_refine(best_psi, best_psi_value, cfg);
    if (best_psi_value > best.value)
        best = Candidate{detail::tied_params(best_psi), best_psi_value};

    GapResult out;
    out.target = detail::gap_cosines(best.params);
    out.angles_deg = target_angles_deg(out.target);
    out.report = q_mirror(build_witness(out.target), cfg.optimizer);
    out.delta = out.report.delta;
    out.converged = out.report.converged;
    return out;
}

}  // namespace asymwit
