// puiseux.hpp — local expansion coefficients of the split at transition
// points, with the square-root sign resolved to the documented phases

#pragma once

#include <vector>

#include "epenc/tpoints.hpp"

namespace epenc::puiseux {

struct PuiseuxData {
    tpoints::TransitionPoint tp;
    int order = 1;  // 1 for simple TPs, 2 for the coalescent double point
    cplx beta;      // beta_k^(1) or beta_0^(2)
    double phase = 0.0; // arg(beta) in (-pi, pi]
};

// Leading coefficient beta^2 = alpha_bar (alpha_bar s/2 + i/x) - 2 s exp(-s^2);
// identically the derivative of delta2 at the point.
PuiseuxData beta1(const ReducedPulseParams& p, const tpoints::TransitionPoint& tp);

// Second-order coefficient at the coalescent point,
// beta = (1/2) sqrt(alpha_bar^2 - 4 exp(-s^2)(1 - 2 s^2)).
PuiseuxData beta2_coal(const ReducedPulseParams& p);

struct ProductReport {
    cplx beta1;               // leading coefficient used
    cplx d1_analytic;         // d(delta2)/ds at the TP
    double d1_discrepancy;    // |beta1^2 - d1_analytic|
    cplx beta3;               // estimate from the second derivative
    double d2_fd_discrepancy; // |FD - analytic| for the second derivative
    cplx mirror_beta1;        // coefficient at the mirrored point, when distinct
    double symmetry_discrepancy; // |mirror_beta1 + i conj(beta1)|
};

// Consistency checks tying the local coefficients to derivatives of delta2
// and to the time-symmetry rule beta_bar = -i conj(beta).
ProductReport verify_product(const ReducedPulseParams& p,
                             const std::vector<tpoints::TransitionPoint>& catalog,
                             const tpoints::TransitionPoint& tp);

} // namespace epenc::puiseux
