// probe.cpp — scratch numerics probe (not installed)
#include <cstdio>

#include "epenc/amplitude.hpp"
#include "epenc/equivalue.hpp"
#include "epenc/fits.hpp"
#include "epenc/model.hpp"
#include "epenc/oracle.hpp"
#include "epenc/puiseux.hpp"
#include "epenc/residua.hpp"
#include "epenc/tpoints.hpp"

using namespace epenc;

int main() {
    auto p52 = make_params(5.0, 2.0, 4.0 * pi);
    auto p23 = make_params(2.0, 3.0, 4.0 * pi);

    // Layouts and central points
    for (auto p : {p52, p23}) {
        auto tag = tpoints::classify_layout(p);
        std::printf("x=%g a=%g R=%.6f layout=%s\n", p.x, p.alpha_bar, tag.R,
                    tpoints::layout_name(tag.kind));
        auto c = tpoints::find_central(p);
        for (auto& t : c)
            std::printf("  central k=%d role=%s s=(%.8f,%.8f) z=%d res=%.2e\n", t.k,
                        tpoints::role_name(t.role), t.s.real(), t.s.imag(), t.z, t.residual);
        auto tails = residua::compute_tails(p);
        std::printf("  c_g=%.8f c_p=%.8f\n", tails.c_g, tails.c_p);
        auto res = residua::gamma_phi_at(p, c.front());
        std::printf("  g_red(s0)=%.8f p_red(s0,reported)=%.8f\n", res.gamma_red, res.phi_red);
        auto gb = residua::gamma_bar(p, res);
        std::printf("  gamma_bar/x=%.8f\n", gb.gamma_bar_red);
        auto nc = fits::natural_coords(p);
        std::printf("  fit gamma_bar/x=%.8f", fits::gamma_bar_fit(nc));
        if (nc.R <= 1.0) std::printf("  fit phi/x=%.8f", fits::phi_fit(nc));
        std::printf("\n");
        if (!c.front().on_axis()) {
            auto pd = puiseux::beta1(p, c.front());
            std::printf("  arg beta1(s0)=%.6f  (pi units %.4f)\n", pd.phase, pd.phase / pi);
        }
    }

    // Asymptotic TPs: guess quality, z alternation, closed-form residua vs quadrature
    for (auto p : {p52, p23}) {
        std::printf("asymptotics x=%g a=%g\n", p.x, p.alpha_bar);
        auto tps = tpoints::enumerate_tps(p, 4);
        auto tails = residua::compute_tails(p);
        for (auto& t : tps) {
            if (t.k == 0 || t.role != tpoints::TpRole::AsymptoticRight) continue;
            auto [g, gl] = tpoints::asymptotic_guess(p, t.k);
            auto quad = residua::gamma_phi_at(p, t);
            auto cf = residua::gamma_phi_asymptotic(p, t.k, tails);
            std::printf(
                "  k=%d s=(%.5f,%.5f) guess_rel=%.4f z=%d | g quad=%.6f cf=%.6f (%.2f%%) | p "
                "quad=%.6f cf=%.6f (%.2f%%)\n",
                t.k, t.s.real(), t.s.imag(), std::abs(g - t.s) / std::abs(t.s), t.z,
                quad.gamma_red, cf.gamma_red,
                100.0 * std::abs(cf.gamma_red - quad.gamma_red) / std::abs(quad.gamma_red),
                quad.phi_red, cf.phi_red,
                100.0 * std::abs(cf.phi_red - quad.phi_red) / std::abs(quad.phi_red));
            auto pd = puiseux::beta1(p, t);
            std::printf("    arg beta=%.4f pi\n", pd.phase / pi);
        }
    }

    // Survival pipeline vs first-order quadrature at the two reference points
    for (auto base : {p52, p23}) {
        for (double th : {4.0 * pi, 6.0 * pi}) {
            auto p = base;
            p.theta = th;
            auto sr = amplitude::survival_probability(p);
            auto v1 = oracle::first_order_quadrature(p);
            const double f = sr.f;
            std::printf("x=%g a=%g th=%.3f p1_analytic=%.6e p1_quad=%.6e f=%.6f v1=(%.4e,%.4e)\n",
                        p.x, p.alpha_bar, th, sr.p1, f * f * std::norm(v1), f, v1.real(),
                        v1.imag());
        }
    }

    // TDSE cross-check
    {
        auto p = make_params(5.0, 2.0, 4.0 * pi);
        auto prop = oracle::propagate_tdse(p);
        auto v1 = oracle::first_order_quadrature(p);
        const double f = amplitude::norm_factor(p);
        std::printf("tdse p1=%.6e vs f^2|v1|^2=%.6e (norm gain %.2e)\n", prop.p1,
                    f * f * std::norm(v1), prop.max_norm_gain);
        auto ph = make_params(std::numeric_limits<double>::infinity(), 0.0, 2.0 * pi);
        auto prop2 = oracle::propagate_tdse(ph);
        std::printf("hermitian 2pi pulse p1=%.12f\n", prop2.p1);
        auto ph3 = make_params(std::numeric_limits<double>::infinity(), 0.0, pi);
        std::printf("hermitian pi pulse p1=%.3e\n", oracle::propagate_tdse(ph3).p1);
    }
    return 0;
}
