#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace asymwit {

/// Outcome of comparing an observed witness value against the
/// mirror-symmetric bound.
struct CertificationVerdict {
    double i6_observed = 0.0;
    double sigma = 0.0;
    double q_mirror = 0.0;
    double q_max = 0.0;
    double excess = 0.0;        // i6_observed - q_mirror
    double significance = 0.0;  // excess / sigma
    double threshold_k = 3.0;
    bool certified = false;     // excess > k * sigma
};

inline CertificationVerdict make_verdict(double i6_observed, double sigma,
                                         double q_mirror, double q_max,
                                         double k = 3.0) {
    if (!std::isfinite(i6_observed) || !std::isfinite(q_mirror) || !std::isfinite(q_max))
        throw std::invalid_argument("verdict: non-finite input");
    if (!(sigma >= 0.0)) throw std::invalid_argument("verdict: sigma must be >= 0");
    if (!(k >= 0.0)) throw std::invalid_argument("verdict: k must be >= 0");
    CertificationVerdict v;
    v.i6_observed = i6_observed;
    v.sigma = sigma;
    v.q_mirror = q_mirror;
    v.q_max = q_max;
    v.threshold_k = k;
    v.excess = i6_observed - q_mirror;
    v.significance = sigma > 0.0 ? v.excess / sigma
                                 : std::numeric_limits<double>::quiet_NaN();
    v.certified = v.excess > k * sigma;
    return v;
}

}  // namespace asymwit
