// oracle.hpp — independent ground truth: real-axis perturbation quadrature,
// higher-order perturbation series, direct 2x2 propagation, and the
// finite-pulse-area parameter fit

#pragma once

#include <vector>

#include "epenc/params.hpp"
#include "epenc/types.hpp"

namespace epenc::oracle {

// First-order amplitude v = -int e^{-(theta/(x sqrt(2pi)))[gamma - i phi]} N ds,
// integrated jointly with the split so no precomputed table is needed.
cplx first_order_quadrature(const ReducedPulseParams& p, double rtol = 1e-12);

struct SeriesResult {
    std::vector<cplx> orders;    // v_j for j = 1..J
    std::vector<cplx> odd_sums;  // partial sums over odd j
    bool converged = false;      // |v_J| below |v_1| by a decaying pattern
    double ratio_estimate = 0.0; // mean |v_{j+2}/v_j| over odd j
};

SeriesResult perturbation_series(const ReducedPulseParams& p, int J, int grid_n = 24000);

struct PropagationResult {
    cplx a1{0.0, 0.0};
    double p1 = 0.0;
    double max_norm_gain = 0.0; // growth of the physical norm (should be <= ~0)
};

// Direct propagation of the 2x2 reduced system in the bare basis from -S to
// +S; p1 is the final bound-state population.
PropagationResult propagate_tdse(const ReducedPulseParams& p, double rtol = 1e-11,
                                 double S = 10.0);

struct FitPoint {
    double x = 0.0;
    double R = 0.0;
    bool even_side = false;
    std::vector<double> prefactor; // a(theta) per consecutive theta window
    double gamma_red_fit = 0.0;    // fitted decay constant (gamma/x), even: 3-theta solve
    double phi_red_fit = 0.0;      // fitted oscillation constant, even side only
};

struct FiniteThetaFit {
    std::vector<FitPoint> points;
    std::vector<double> window_theta; // midpoint theta of each window
    // Per-window aggregates over the sweep points of each side.
    std::vector<double> odd_prefactor_mean, odd_prefactor_se;
    std::vector<double> even_prefactor_mean, even_prefactor_se;
};

// Least-squares fit of first-order amplitudes to the odd/even asymptotic
// forms along a sweep in x at fixed alpha_bar, for each theta in the
// ascending list.
FiniteThetaFit fit_finite_theta(const std::vector<ReducedPulseParams>& sweep,
                                const std::vector<double>& theta_list);

} // namespace epenc::oracle
