// tpoints.hpp — transition points of the quasi-energy split: central pair,
// asymptotic series, layout classification, and the separator curve

#pragma once

#include <string>
#include <vector>

#include "epenc/params.hpp"
#include "epenc/types.hpp"

namespace epenc::tpoints {

enum class TpRole {
    CentralEvenRight,
    CentralEvenLeft,
    CentralOddLower,
    CentralOddUpper,
    Coalescent,
    AsymptoticRight,
    AsymptoticLeft,
};

const char* role_name(TpRole role);

struct TransitionPoint {
    int k = 0;        // series index (0 for the central pair)
    cplx s;           // position, Im s > 0
    TpRole role = TpRole::CentralEvenRight;
    int z = 1;        // pole sign (+/-1), equals (-1)^k in the upper half-plane
    double residual = 0.0; // |delta2(s)| at convergence

    bool on_axis() const {
        return role == TpRole::CentralOddLower || role == TpRole::CentralOddUpper ||
               role == TpRole::Coalescent;
    }
};

enum class LayoutKind { Even, Odd, Coalescent };

struct LayoutTag {
    LayoutKind kind = LayoutKind::Even;
    double R = 0.0; // separator coordinate; Even iff R < 1, Odd iff R > 1
};

const char* layout_name(LayoutKind kind);

// Positive root where the two on-axis parabolas touch.
inline double xi_coal(const ReducedPulseParams& p) {
    const double ax = p.alpha_bar * p.x;
    if (p.hermitian() || ax > 1e8) return 1.0;
    if (ax <= 0.0) return 0.0;
    const double u = 1.0 / ax;
    return std::sqrt(u * u + 1.0) - u;
}

// h(xi) = exp(xi^2) - (alpha_bar xi/2 + 1/x)^2; its positive roots are the
// on-axis transition points s = i xi.
inline double on_axis_gap(const ReducedPulseParams& p, double xi) {
    const double lin = 0.5 * p.alpha_bar * xi + p.inv_x();
    return std::exp(xi * xi) - lin * lin;
}

LayoutTag classify_layout(const ReducedPulseParams& p);

// Chirp at which the central transition points coalesce, for x >= 1.
double separator_alpha(double x);

// Central transition point(s): one coalescent double root, two on-axis roots
// (odd layout), or the symmetric off-axis pair (even layout).
std::vector<TransitionPoint> find_central(const ReducedPulseParams& p);

// Asymptotic series guess for the k-th pair (k >= 1), returned as
// (right, mirrored-left) positions.
std::pair<cplx, cplx> asymptotic_guess(const ReducedPulseParams& p, int k);

// Newton refinement of a guess on delta2(s) = 0.
cplx refine(const ReducedPulseParams& p, cplx guess, int max_iter = 60);

// Pole sign z_k = i*lambda_bar(s_k), rounded to +/-1.
int pole_sign(const ReducedPulseParams& p, cplx s_k);

// Central points plus refined asymptotic pairs for 1 <= k <= K, sorted by k.
std::vector<TransitionPoint> enumerate_tps(const ReducedPulseParams& p, int K);

std::vector<cplx> positions(const std::vector<TransitionPoint>& tps);

} // namespace epenc::tpoints
