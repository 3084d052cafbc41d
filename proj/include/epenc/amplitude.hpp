// amplitude.hpp — assembly of the first-order survival amplitude from
// transition-point contributions and the survival probability

#pragma once

#include <optional>
#include <vector>

#include "epenc/puiseux.hpp"
#include "epenc/residua.hpp"

namespace epenc::amplitude {

struct TPContribution {
    tpoints::TransitionPoint tp;
    cplx branchcut;  // two-sided branchcut term of the right-half member
    cplx residuum;   // full-circle residuum term of the right-half member
    cplx total;      // symmetric-pair total (on-axis: single-point total)
    double regime_margin = 0.0;
};

// Symmetric-pair total v_k = -z_k (2 pi/3) e^{-E} cos(Phi) with
// E = (theta/sqrt(2 pi)) gamma_red, Phi likewise from phi_red.
TPContribution tp_pair_contribution(const ReducedPulseParams& p,
                                    const tpoints::TransitionPoint& tp,
                                    const residua::ResiduumData& res);

// Odd layout: lower on-axis point contributes -(pi/3) e^{-E}; the upper
// point contributes exactly zero.
TPContribution odd_layout_contribution(const ReducedPulseParams& p,
                                       const residua::ResiduumData& res);

struct AsymptoticSum {
    cplx sum{0.0, 0.0};
    double tail_bound = 0.0; // geometric bound on the dropped k > K terms
    std::vector<TPContribution> terms;
};

AsymptoticSum asymptotic_sum(const ReducedPulseParams& p, int K,
                             const std::optional<residua::AsymptoticTails>& tails = std::nullopt);

// Normalization factor f = exp[(theta/(x sqrt(2 pi))) lim (gamma(s) - s)];
// below 1 in the dissipative case, exactly 1 for the Hermitian sentinel.
double norm_factor(const ReducedPulseParams& p);

// theta sqrt(2/pi) |beta^(1)| / 3 over pi/2; > 1 when the large-pulse-area
// forms apply.
double large_area_margin(const ReducedPulseParams& p, const tpoints::TransitionPoint& tp);

struct SurvivalOptions {
    bool include_asymptotic = false; // add the k >= 1 closed-form pair sum to v
    int asymptotic_K = 6;
    bool ddp_correction = false;     // diagnostic 3/pi first-order factor
};

struct SurvivalResult {
    ReducedPulseParams params;
    tpoints::LayoutTag layout;
    cplx v_central{0.0, 0.0};
    cplx v_asymptotic{0.0, 0.0};
    double f = 1.0;
    double gamma_bar_red = 0.0; // gamma_bar / x
    double phi_red = 0.0;       // phi(s0)/x, reported convention (0 in odd layout)
    double p1 = 0.0;
    double margin = 0.0;
    bool separator_flag = false;
    double p1_even_form = 0.0; // both forms, populated near the separator
    double p1_odd_form = 0.0;
    bool asymptotics_included = false;
    std::vector<TPContribution> contributions;
};

SurvivalResult survival_probability(const ReducedPulseParams& p,
                                    const SurvivalOptions& opts = {});

} // namespace epenc::amplitude
