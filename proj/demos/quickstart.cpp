// Minimal library walkthrough: build a witness for a target triple, compute
// its bounds, simulate a finite-shot experiment, and issue a verdict.

#include <cstdio>

#include "asymwit/asymwit.hpp"

int main() {
    using namespace asymwit;

    // Target: the most asymmetric configuration (pairwise angles in degrees).
    const TargetTriple target = target_from_angles_deg(58.4, 121.6, 180.0);
    const WitnessSpec spec = build_witness(target);
    std::printf("biases: %.6f %.6f %.6f\n", spec.omega12, spec.omega13, spec.omega23);

    // Bounds: overall quantum maximum vs the mirror-symmetric maximum.
    const BoundsReport bounds = q_mirror(spec, OptimizerConfig{});
    std::printf("q_max = %.5f, q_mirror = %.5f, gap = %.5f\n", bounds.q_max,
                bounds.q_mirror, bounds.delta);

    // Simulate the saturating realization with 8192 shots per cell and a bit
    // of depolarizing noise.
    const Scenario scenario = scenario_from_targets(target);
    const ShotResult shots = simulate(scenario, spec, ShotPlan{8192, 7, 0.005, false});
    std::printf("simulated witness value: %.4f +/- %.4f\n", shots.i6_estimate,
                shots.sigma);

    // Verdict: does the simulated value certify asymmetry at 3 sigma?
    const CertificationVerdict v = make_verdict(shots.i6_estimate, shots.sigma,
                                                bounds.q_mirror, bounds.q_max);
    std::printf("excess = %.4f (%.1f sigma): %s\n", v.excess, v.significance,
                v.certified ? "asymmetry certified" : "not certified");
    return 0;
}
