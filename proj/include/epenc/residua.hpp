// residua.hpp — integrals of the split up to the transition points, their
// asymptotic closed forms, and the decay constant gamma_bar

#pragma once

#include <optional>

#include "epenc/model.hpp"
#include "epenc/tpoints.hpp"

namespace epenc::residua {

// Sign applied to the reported phi so the published phi(s_0)/x surface is
// reproduced; the internal branch-tracked integral has the opposite sign at
// the central points. Cosine-type consumers are insensitive to it.
inline constexpr double phi_report_sign = -1.0;

enum class Method { TwoLegQuadrature, AsymptoticClosedForm };

struct ResiduumData {
    tpoints::TransitionPoint tp;
    double gamma_red = 0.0; // gamma/x
    double phi_red = 0.0;   // phi/x, reported convention
    double x = 0.0;
    Method method = Method::TwoLegQuadrature;

    double gamma() const { return x * gamma_red; }
    double phi() const { return x * phi_red; }
};

// Two-leg quadrature 0 -> Re s_k -> s_k of the tracked split. The on-axis
// upper point reports phi = 0 (the two branchcut sides carry opposite
// values; the principal value vanishes).
ResiduumData gamma_phi_at(const ReducedPulseParams& p, const tpoints::TransitionPoint& tp);

// Real-axis tail integrals reused across the closed forms:
//   c_g = lim (gamma/x - s/x)  = integral of [Im delta - 1/x]
//   c_p = lim (phi/x - alpha_bar s^2/4) = integral of [Re delta - alpha_bar s/2]
struct AsymptoticTails {
    double c_g = 0.0;
    double c_p = 0.0;
    double s_max = 0.0;
};

AsymptoticTails compute_tails(const ReducedPulseParams& p, double s_max = 12.0);

// Closed-form residua for the k-th asymptotic pair (k >= 1). Includes the
// boundary terms Re s_k/x and Im s_k/x that the leading-order series drops;
// without them the forms miss by O(sqrt(k)).
ResiduumData gamma_phi_asymptotic(const ReducedPulseParams& p, int k,
                                  const std::optional<AsymptoticTails>& tails = std::nullopt);

// gamma_bar/x = lim_{s->inf}[s/x - gamma(s)/x] + gamma(tp)/x; finite and
// positive in the studied regimes. Scaled accessor in ResidualBar.
struct ResidualBar {
    double gamma_bar_red = 0.0;
    double x = 0.0;
    double gamma_bar() const { return x * gamma_bar_red; }
};

ResidualBar gamma_bar(const ReducedPulseParams& p, const ResiduumData& central,
                      double s_max = 12.0);

} // namespace epenc::residua
