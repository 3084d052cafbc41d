#include "epenc/amplitude.hpp"

#include <cmath>
#include <limits>

namespace epenc::amplitude {

namespace {

// Complex one-sided pieces at a right-half (or on-axis) point. Delta_n is
// the number of thirds of the circle enclosed; n_cut indexes the branchcut
// line.
std::pair<cplx, cplx> residuum_and_branchcut(const ReducedPulseParams& p, int z,
                                             double gamma_red, double phi_red, int delta_n,
                                             int n_cut) {
    const double E = p.area_scale() * gamma_red;
    const double Phi = p.area_scale() * phi_red;
    const cplx envelope = std::exp(cplx{-E, Phi});
    const cplx r = -static_cast<double>(z) * pi * delta_n / 6.0 * envelope;
    const cplx b = static_cast<double>(z) * ((n_cut % 2 == 0) ? 1.0 : -1.0) * pi / 6.0 * envelope;
    return {r, b};
}

} // namespace

TPContribution tp_pair_contribution(const ReducedPulseParams& p,
                                    const tpoints::TransitionPoint& tp,
                                    const residua::ResiduumData& res) {
    p.validate();
    if (tp.on_axis())
        throw LayoutMismatch("tp_pair_contribution: on-axis point; use odd_layout_contribution");
    TPContribution c;
    c.tp = tp;
    auto [r, b] = residuum_and_branchcut(p, tp.z, res.gamma_red, res.phi_red, 3, 0);
    c.residuum = r;
    c.branchcut = b;
    const double E = p.area_scale() * res.gamma_red;
    const double Phi = p.area_scale() * res.phi_red;
    c.total = -static_cast<double>(tp.z) * (2.0 * pi / 3.0) * std::exp(-E) * std::cos(Phi);
    c.regime_margin = large_area_margin(p, tp);
    return c;
}

TPContribution odd_layout_contribution(const ReducedPulseParams& p,
                                       const residua::ResiduumData& res) {
    p.validate();
    const auto role = res.tp.role;
    if (role == tpoints::TpRole::CentralOddUpper) {
        TPContribution c;
        c.tp = res.tp;
        auto [r, b] = residuum_and_branchcut(p, res.tp.z, res.gamma_red, res.phi_red, 1, 2);
        c.residuum = r;
        c.branchcut = b;
        c.total = 0.0; // exact cancellation of the partial pieces
        return c;
    }
    if (role != tpoints::TpRole::CentralOddLower && role != tpoints::TpRole::Coalescent)
        throw LayoutMismatch("odd_layout_contribution: even-layout point supplied");
    TPContribution c;
    c.tp = res.tp;
    auto [r, b] = residuum_and_branchcut(p, res.tp.z, res.gamma_red, res.phi_red, 3, 0);
    c.residuum = r;
    c.branchcut = b;
    c.total = -pi / 3.0 * std::exp(-p.area_scale() * res.gamma_red);
    c.regime_margin = large_area_margin(p, res.tp);
    return c;
}

AsymptoticSum asymptotic_sum(const ReducedPulseParams& p, int K,
                             const std::optional<residua::AsymptoticTails>& tails_in) {
    if (K < 1) throw std::invalid_argument("asymptotic_sum: K must be >= 1");
    const residua::AsymptoticTails tails =
        tails_in ? *tails_in : residua::compute_tails(p);
    AsymptoticSum out;
    for (int k = 1; k <= K; ++k) {
        const auto res = residua::gamma_phi_asymptotic(p, k, tails);
        out.terms.push_back(tp_pair_contribution(p, res.tp, res));
        out.sum += out.terms.back().total;
    }
    // Terms decay at least geometrically with ratio exp(-area_scale * alpha_bar * pi / 2).
    const double q = std::exp(-p.area_scale() * p.alpha_bar * 0.5 * pi);
    const double last = std::abs(out.terms.back().total);
    out.tail_bound = (q < 1.0) ? last * q / (1.0 - q) : std::numeric_limits<double>::infinity();
    return out;
}

double norm_factor(const ReducedPulseParams& p) {
    const auto t1 = residua::compute_tails(p);
    const auto t2 = residua::compute_tails(p, 2.0 * t1.s_max);
    if (std::abs(t1.c_g - t2.c_g) > tol().tail_convergence)
        throw NonConvergent("norm_factor: tail limit not converged");
    return std::exp(p.area_scale() * t1.c_g);
}

double large_area_margin(const ReducedPulseParams& p, const tpoints::TransitionPoint& tp) {
    double beta_mag = 0.0;
    if (tp.role == tpoints::TpRole::Coalescent)
        beta_mag = 0.0; // first-order coefficient vanishes at the coalescence
    else
        beta_mag = std::abs(puiseux::beta1(p, tp).beta);
    return p.theta * std::sqrt(2.0 / pi) * beta_mag / 3.0 / (0.5 * pi);
}

SurvivalResult survival_probability(const ReducedPulseParams& p, const SurvivalOptions& opts) {
    p.validate();
    SurvivalResult out;
    out.params = p;
    out.layout = tpoints::classify_layout(p);
    const auto central = tpoints::find_central(p);
    const auto& lead = central.front(); // right member (even) or lower point (odd)

    const auto res = residua::gamma_phi_at(p, lead);
    const auto gb = residua::gamma_bar(p, res);
    out.gamma_bar_red = gb.gamma_bar_red;
    out.margin = large_area_margin(p, lead);
    out.f = norm_factor(p);

    const double E = p.area_scale() * res.gamma_red;
    const double Phi = p.area_scale() * res.phi_red;
    const double decay = std::exp(-2.0 * p.area_scale() * out.gamma_bar_red);
    out.p1_even_form = 4.0 * pi * pi / 9.0 * decay * std::cos(Phi) * std::cos(Phi);
    out.p1_odd_form = pi * pi / 9.0 * decay;
    out.separator_flag = std::abs(out.layout.R - 1.0) < 1e-3;

    if (out.layout.kind == tpoints::LayoutKind::Even) {
        out.phi_red = res.phi_red;
        out.v_central = -(2.0 * pi / 3.0) * std::exp(-E) * std::cos(Phi);
        out.p1 = out.p1_even_form;
        out.contributions.push_back(tp_pair_contribution(p, lead, res));
    } else {
        out.phi_red = 0.0;
        out.v_central = -(pi / 3.0) * std::exp(-E);
        out.p1 = out.p1_odd_form;
        out.contributions.push_back(odd_layout_contribution(p, res));
        if (central.size() > 1) {
            const auto res_upp = residua::gamma_phi_at(p, central[1]);
            out.contributions.push_back(odd_layout_contribution(p, res_upp));
        }
    }

    if (opts.include_asymptotic && p.alpha_bar > 0.0) {
        const auto as = asymptotic_sum(p, opts.asymptotic_K);
        out.v_asymptotic = as.sum;
        out.asymptotics_included = true;
        for (const auto& t : as.terms) out.contributions.push_back(t);
        const cplx v = out.v_central + out.v_asymptotic;
        out.p1 = out.f * out.f * std::norm(v);
    }
    if (opts.ddp_correction) out.p1 *= 9.0 / (pi * pi);
    return out;
}

} // namespace epenc::amplitude
