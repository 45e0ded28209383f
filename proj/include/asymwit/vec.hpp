#pragma once

#include <cmath>

namespace asymwit {

/// Point in the closed Bloch ball. Also used for measurement axes, which
/// live on the unit sphere.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

constexpr BlochVector operator+(BlochVector a, BlochVector b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}

constexpr BlochVector operator-(BlochVector a, BlochVector b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}

constexpr BlochVector operator-(BlochVector a) { return {-a.x, -a.y, -a.z}; }

constexpr BlochVector operator*(double s, BlochVector a) {
    return {s * a.x, s * a.y, s * a.z};
}

constexpr double dot(BlochVector a, BlochVector b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr double norm_squared(BlochVector a) { return dot(a, a); }

inline double norm(BlochVector a) { return std::sqrt(norm_squared(a)); }

inline bool is_finite(BlochVector a) {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// v/|v|, or `fallback` when |v| < eps.
inline BlochVector normalized_or(BlochVector v, BlochVector fallback,
                                 double eps = 1e-14) {
    const double n2 = norm_squared(v);
    if (n2 < eps * eps) return fallback;
    return (1.0 / std::sqrt(n2)) * v;
}

/// Some unit vector orthogonal to `axis` (axis need not be unit, but nonzero).
inline BlochVector unit_orthogonal_to(BlochVector axis) {
    // Cross with the coordinate axis least aligned with `axis`.
    BlochVector seed = std::fabs(axis.x) < 0.9 ? BlochVector{1, 0, 0}
                                               : BlochVector{0, 1, 0};
    BlochVector c{axis.y * seed.z - axis.z * seed.y,
                  axis.z * seed.x - axis.x * seed.z,
                  axis.x * seed.y - axis.y * seed.x};
    return normalized_or(c, {0, 0, 1});
}

/// Component of v orthogonal to the unit vector `axis`, normalized; falls
/// back to an arbitrary orthogonal direction when v is (anti)parallel.
inline BlochVector unit_perp_component(BlochVector v, BlochVector axis) {
    const BlochVector p = v - dot(v, axis) * axis;
    if (norm_squared(p) < 1e-28) return unit_orthogonal_to(axis);
    return (1.0 / norm(p)) * p;
}

}  // namespace asymwit
