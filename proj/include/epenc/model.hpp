// model.hpp — reduced two-level model: branch-tracked quasi-energy split,
// non-adiabatic coupling, and path integrals over the split

#pragma once

#include <optional>
#include <vector>

#include "epenc/params.hpp"
#include "epenc/types.hpp"

namespace epenc::model {

// delta2(s) = exp(-s^2) + (alpha_bar s/2 + i/x)^2; entire, single-valued.
inline cplx delta2(const ReducedPulseParams& p, cplx s) {
    const cplx lin = 0.5 * p.alpha_bar * s + iu * p.inv_x();
    return std::exp(-s * s) + lin * lin;
}

inline cplx ddelta2(const ReducedPulseParams& p, cplx s) {
    return -2.0 * s * std::exp(-s * s) + p.alpha_bar * (0.5 * p.alpha_bar * s + iu * p.inv_x());
}

inline cplx d2delta2(const ReducedPulseParams& p, cplx s) {
    return (4.0 * s * s - 2.0) * std::exp(-s * s) + 0.5 * p.alpha_bar * p.alpha_bar;
}

// lambda_bar = exp(s^2/2) (alpha_bar s/2 + i/x); the detuning-to-Rabi ratio.
inline cplx lambda_bar(const ReducedPulseParams& p, cplx s) {
    return std::exp(0.5 * s * s) * (0.5 * p.alpha_bar * s + iu * p.inv_x());
}

// Branch anchor at s = 0: principal square root of delta2(0).
inline cplx anchor_delta(const ReducedPulseParams& p) { return std::sqrt(delta2(p, 0.0)); }

struct ComplexPathPoint {
    cplx s;
    cplx delta;          // branch-tracked quasi-energy split
    double branch_phase; // continuously accumulated arg of delta
};

// Branch continuation along a polyline anchored at its first vertex.
// The spine is a dense ordered sample of (s, delta); evaluations between
// nodes resolve the square-root sign against the nearest spine value, so
// quadrature may probe the segment in any order.
class BranchPath {
public:
    struct Node {
        double u; // cumulative chord-length parameter
        cplx s;
        cplx delta;
    };

    BranchPath(const ReducedPulseParams& p, std::vector<cplx> vertices,
               std::vector<cplx> guard_points = {}, cplx anchor = {0.0, 0.0},
               bool ends_at_tp = false);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<double>& vertex_u() const { return vertex_u_; }
    double length() const { return nodes_.back().u; }

    cplx point_at(double u) const;         // position on the polyline
    cplx delta_at(double u) const;         // branch-resolved split at that position
    cplx delta_near(cplx s, double u) const; // split at s, branch hinted by parameter u

private:
    ReducedPulseParams params_;
    std::vector<Node> nodes_;
    std::vector<double> vertex_u_;
    std::vector<cplx> vertices_;
    bool terminal_tp_ = false;

    std::size_t bracket(double u) const;
    void march_segment(cplx a, cplx b, const std::vector<cplx>& guards, bool stop_short);
};

// Branch-tracked split on an ordered list of points (first point anchors at
// delta(0) continuation from s = 0 unless the path itself starts at 0).
std::vector<ComplexPathPoint> quasi_split(const ReducedPulseParams& p,
                                          const std::vector<cplx>& path,
                                          const std::vector<cplx>& guard_points = {});

// Closed-form non-adiabatic coupling for the linear Gaussian chirp,
// N = [alpha_bar (s^2+1)/2 + i s/x] exp(-s^2/2) / (2 delta2(s)).
cplx nonadiabatic_coupling(const ReducedPulseParams& p, cplx s,
                           const std::vector<cplx>& known_tps = {});

// Reduced path integrals of the split: gamma_red = Im, phi_red = Re of the
// contour integral of delta along the polyline from its first vertex.
// gamma()/phi() scale by x (infinite for the Hermitian sentinel).
struct SplitIntegrals {
    double gamma_red = 0.0;
    double phi_red = 0.0;
    double x = 0.0;

    double gamma() const { return x * gamma_red; }
    double phi() const { return x * phi_red; }
};

struct SplitIntegralOptions {
    double abs_tol = 0.0;    // 0 -> tol().quad_abs
    bool ends_at_tp = false; // final vertex is a branch point: use sqrt substitution
    std::vector<cplx> guard_points;
};

SplitIntegrals split_integral(const ReducedPulseParams& p, const std::vector<cplx>& path,
                              const SplitIntegralOptions& opts = {});

// Raw contour integral of the tracked split along the polyline.
cplx integrate_delta(const ReducedPulseParams& p, const std::vector<cplx>& path,
                     const SplitIntegralOptions& opts = {});

// Asymptotic forms P_inf = (alpha_bar x/2)|Re s|, Q_inf = (alpha_bar x/2) Im s sign(Re s).
// The _red variants omit the x factor (safe for the Hermitian sentinel).
inline double p_inf_red(const ReducedPulseParams& p, cplx s) {
    return 0.5 * p.alpha_bar * std::abs(s.real());
}
inline double q_inf_red(const ReducedPulseParams& p, cplx s) {
    const double sg = (s.real() > 0.0) ? 1.0 : (s.real() < 0.0 ? -1.0 : 0.0);
    return 0.5 * p.alpha_bar * s.imag() * sg;
}
inline std::pair<double, double> asymptotic_forms(const ReducedPulseParams& p, cplx s) {
    return {p.x * p_inf_red(p, s), p.x * q_inf_red(p, s)};
}

// Local minima of Re delta on the real axis within [0, s_hi]; one minimum in
// the single-crossing regime, two in the double-crossing regime.
std::vector<double> real_axis_split_minima(const ReducedPulseParams& p, double s_hi = 6.0);

} // namespace epenc::model
