#include "epenc/residua.hpp"

#include <cmath>

#include "epenc/quadrature.hpp"
#include "epenc/tpoints.hpp"

namespace epenc::residua {

namespace {

// Split integral along 0 -> Re s -> s, terminal vertex on the branch point.
model::SplitIntegrals two_leg(const ReducedPulseParams& p, cplx s_tp) {
    std::vector<cplx> path;
    path.push_back({0.0, 0.0});
    if (std::abs(s_tp.real()) > 1e-14) path.push_back({s_tp.real(), 0.0});
    path.push_back(s_tp);
    model::SplitIntegralOptions opts;
    opts.ends_at_tp = true;
    return model::split_integral(p, path, opts);
}

} // namespace

ResiduumData gamma_phi_at(const ReducedPulseParams& p, const tpoints::TransitionPoint& tp) {
    p.validate();
    ResiduumData out;
    out.tp = tp;
    out.x = p.x;
    out.method = Method::TwoLegQuadrature;

    if (tp.role == tpoints::TpRole::CentralOddUpper) {
        // Path along the imaginary axis runs over the lower point (a branch
        // point) and then along the connecting equivalue line, where the two
        // sides carry opposite Re-parts. gamma equals the lower point's value
        // plus zero (the connecting line is an equivalue line); phi is
        // reported as the principal value 0.
        auto central = tpoints::find_central(p);
        const auto& low = central.front();
        const double xi_low = low.s.imag();
        const double xi_upp = tp.s.imag();
        model::SplitIntegralOptions opts;
        opts.ends_at_tp = true;
        const auto base = model::split_integral(p, {{0.0, 0.0}, low.s}, opts);
        // Between the on-axis points delta2 < 0; |delta| integrates into phi
        // only, leaving gamma untouched.
        out.gamma_red = base.gamma_red;
        out.phi_red = 0.0;
        (void)xi_low;
        (void)xi_upp;
        return out;
    }

    const auto si = two_leg(p, tp.s);
    out.gamma_red = si.gamma_red;
    out.phi_red = phi_report_sign * si.phi_red;
    return out;
}

AsymptoticTails compute_tails(const ReducedPulseParams& p, double s_max) {
    p.validate();
    AsymptoticTails t;
    t.s_max = s_max;
    // Segment boundaries at the real-axis minima of Re delta help the
    // adaptive rule near the avoided crossings.
    std::vector<cplx> path = {{0.0, 0.0}};
    for (double m : model::real_axis_split_minima(p, std::min(s_max, 6.0)))
        path.push_back({m, 0.0});
    path.push_back({s_max, 0.0});
    const auto si = model::split_integral(p, path);
    t.c_g = si.gamma_red - s_max * p.inv_x();
    t.c_p = si.phi_red - 0.25 * p.alpha_bar * s_max * s_max;
    return t;
}

ResiduumData gamma_phi_asymptotic(const ReducedPulseParams& p, int k,
                                  const std::optional<AsymptoticTails>& tails_in) {
    if (k < 1) throw std::invalid_argument("gamma_phi_asymptotic: k must be >= 1");
    const AsymptoticTails tails = tails_in ? *tails_in : compute_tails(p);
    cplx s_k = tpoints::asymptotic_guess(p, k).first;
    try {
        s_k = tpoints::refine(p, s_k);
    } catch (const ConvergenceFailure&) {
        // keep the series position; the form degrades gracefully
    }

    // Vertical-leg boundary term: the resummed integration-by-parts value of
    // int (delta - Delta) along Re s_k + i t, dominated by the branch point,
    //   B = -i [ (1 - ln 2) Delta(s_k)/s_k + e^{-R^2} / (4 R Delta(R)) ].
    const double R = s_k.real();
    const cplx det_tp = 0.5 * p.alpha_bar * s_k + iu * p.inv_x();
    const cplx det_base = 0.5 * p.alpha_bar * R + iu * p.inv_x();
    const cplx B = -iu * ((1.0 - std::log(2.0)) * det_tp / s_k +
                          std::exp(-R * R) / (4.0 * R * det_base));

    ResiduumData out;
    out.tp.k = k;
    out.tp.s = s_k;
    out.tp.role = tpoints::TpRole::AsymptoticRight;
    out.tp.z = (k % 2 == 0) ? 1 : -1;
    out.x = p.x;
    out.method = Method::AsymptoticClosedForm;
    const cplx sq = s_k * s_k;
    out.gamma_red = 0.25 * p.alpha_bar * sq.imag() + R * p.inv_x() + tails.c_g + B.real();
    const double phi_internal =
        0.25 * p.alpha_bar * sq.real() - s_k.imag() * p.inv_x() + tails.c_p - B.imag();
    out.phi_red = phi_report_sign * phi_internal;
    return out;
}

ResidualBar gamma_bar(const ReducedPulseParams& p, const ResiduumData& central, double s_max) {
    const AsymptoticTails t1 = compute_tails(p, s_max);
    const AsymptoticTails t2 = compute_tails(p, 2.0 * s_max);
    if (std::abs(t1.c_g - t2.c_g) > tol().tail_convergence)
        throw NonConvergent("gamma_bar: tail limit not converged (wrong branch of delta?)");
    ResidualBar rb;
    rb.x = p.x;
    rb.gamma_bar_red = central.gamma_red - t1.c_g;
    return rb;
}

} // namespace epenc::residua
