#pragma once

#include <algorithm>
#include <cmath>

#include "asymwit/asymwit.hpp"

namespace testutil {

using asymwit::BlochVector;

struct Rotation {
    double m[3][3];
};

inline Rotation rotation_from_axis_angle(BlochVector axis, double angle) {
    const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
    const double x = axis.x, y = axis.y, z = axis.z;
    return Rotation{{{t * x * x + c, t * x * y - s * z, t * x * z + s * y},
                     {t * x * y + s * z, t * y * y + c, t * y * z - s * x},
                     {t * x * z - s * y, t * y * z + s * x, t * z * z + c}}};
}

inline BlochVector apply(const Rotation& r, BlochVector v) {
    return {r.m[0][0] * v.x + r.m[0][1] * v.y + r.m[0][2] * v.z,
            r.m[1][0] * v.x + r.m[1][1] * v.y + r.m[1][2] * v.z,
            r.m[2][0] * v.x + r.m[2][1] * v.y + r.m[2][2] * v.z};
}

inline Rotation random_rotation(asymwit::Rng& rng) {
    return rotation_from_axis_angle(rng.unit_vector(),
                                    rng.uniform(0.0, 2.0 * asymwit::kPi));
}

// Independent oracle for the classical bound: every deterministic one-bit
// strategy assigns a bit to each of the 3 preparations and a deterministic
// +-1 response to each of the 2 measurements (2^3 * 4^2 = 128 strategies).
inline double classical_i3_brute_force(double w) {
    const auto resp = [](int f, int b) { return ((f >> b) & 1) ? 1.0 : -1.0; };
    double best = -1e300;
    for (int bits = 0; bits < 8; ++bits) {
        const int b1 = bits & 1, b2 = (bits >> 1) & 1, b3 = (bits >> 2) & 1;
        for (int f1 = 0; f1 < 4; ++f1) {
            for (int f2 = 0; f2 < 4; ++f2) {
                const double value =
                    w * (resp(f1, b1) + resp(f1, b2) - resp(f1, b3)) +
                    (1.0 - w) * (resp(f2, b1) - resp(f2, b2));
                best = std::max(best, value);
            }
        }
    }
    return best;
}

// Independent oracle for the quantum maximum: 1-D scan over the angle between
// the two certified unit states of the conditional maximum, then shrinking
// refinement.
inline double i3_quantum_max_scan(double w) {
    const auto value = [&](double a) {
        return w * std::sqrt(2.0 + 2.0 * std::cos(a)) +
               (1.0 - w) * std::sqrt(2.0 - 2.0 * std::cos(a)) + w;
    };
    double best_a = 0.0, best = value(0.0);
    for (int i = 1; i <= 2000; ++i) {
        const double a = asymwit::kPi * i / 2000.0;
        const double v = value(a);
        if (v > best) {
            best = v;
            best_a = a;
        }
    }
    for (double step = asymwit::kPi / 2000.0; step > 1e-12; step *= 0.5) {
        for (double cand : {best_a - step, best_a + step}) {
            cand = std::clamp(cand, 0.0, asymwit::kPi);
            const double v = value(cand);
            if (v > best) {
                best = v;
                best_a = cand;
            }
        }
    }
    return best;
}

}  // namespace testutil
