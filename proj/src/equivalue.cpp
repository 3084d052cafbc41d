#include "epenc/equivalue.hpp"

#include <algorithm>
#include <cmath>

#include "epenc/model.hpp"

namespace epenc::equivalue {

std::vector<double> emanation_angles(const puiseux::PuiseuxData& pd) {
    const int m = pd.order;
    std::vector<double> out;
    const double offset =
        -2.0 / (m + 2) * std::arg(2.0 * pd.beta / static_cast<double>(m + 2));
    for (int n = 0; n < m + 2; ++n) {
        double a = 2.0 * pi * n / (m + 2) + offset;
        a = std::remainder(a, 2.0 * pi);
        if (a < 0.0) a += 2.0 * pi;
        out.push_back(a);
    }
    return out;
}

namespace {

cplx sqrt_near(cplx w, cplx ref) {
    const cplx r = std::sqrt(w);
    return (std::abs(r - ref) <= std::abs(-r - ref)) ? r : -r;
}

} // namespace

EquivalueLine trace(const ReducedPulseParams& p,
                    const std::vector<tpoints::TransitionPoint>& catalog,
                    const tpoints::TransitionPoint& origin, int n, const TraceOptions& opts) {
    p.validate();
    const puiseux::PuiseuxData pd = (origin.role == tpoints::TpRole::Coalescent)
                                        ? puiseux::beta2_coal(p)
                                        : puiseux::beta1(p, origin);
    const auto angles = emanation_angles(pd);
    if (n < 0 || n >= static_cast<int>(angles.size()))
        throw std::invalid_argument("trace: emanation index out of range");
    const double phi_n = angles[n];
    const cplx dir0 = std::exp(iu * phi_n);

    EquivalueLine line;
    line.origin = origin;
    line.n = n;

    // Seed one small step out; the TP itself is a branch point.
    cplx s = origin.s + opts.dl_min * dir0;
    // Puiseux prediction fixes the local branch; the orientation sign then
    // makes the first step point along the emanation angle.
    const cplx pred = (pd.order == 1)
                          ? pd.beta * std::sqrt(opts.dl_min) * std::exp(iu * 0.5 * phi_n)
                          : pd.beta * opts.dl_min * std::exp(iu * phi_n);
    cplx delta = sqrt_near(model::delta2(p, s), pred);
    double sigma = 1.0;
    {
        const cplx t = std::exp(-iu * std::arg(delta));
        sigma = ((t * std::conj(dir0)).real() >= 0.0) ? 1.0 : -1.0;
    }

    const double x_scale = p.hermitian() ? 1.0 : p.x;
    double drift_red = 0.0;
    line.points.push_back(origin.s);
    line.gamma_drift.push_back(0.0);
    line.points.push_back(s);
    line.gamma_drift.push_back(0.0);

    double prev_im = s.imag();
    for (int step = 0; step < opts.max_steps; ++step) {
        // Step size from distance to the nearest catalog point.
        double dist = std::abs(s - origin.s);
        for (const auto& tp : catalog) dist = std::min(dist, std::abs(s - tp.s));
        double dl = std::clamp(0.25 * dist, opts.dl_min, opts.dl_max);

        // Midpoint rule on the direction field, halving on sharp turns.
        cplx s_new, d_new, d_half;
        for (;;) {
            const cplx t1 = sigma * std::exp(-iu * std::arg(delta));
            const cplx s_mid = s + 0.5 * dl * t1;
            const cplx d_mid = sqrt_near(model::delta2(p, s_mid), delta);
            const cplx t2 = sigma * std::exp(-iu * std::arg(d_mid));
            s_new = s + dl * t2;
            d_half = sqrt_near(model::delta2(p, s + 0.5 * (s_new - s)), d_mid);
            d_new = sqrt_near(model::delta2(p, s_new), d_mid);
            const double turn = std::abs(std::arg(d_new / delta));
            if (turn < 0.2 || dl <= opts.dl_min) break;
            dl *= 0.5;
        }
        drift_red += ((delta + 4.0 * d_half + d_new) * (s_new - s) / 6.0).imag();
        s = s_new;
        delta = d_new;

        // Transverse Newton re-projection onto the level set.
        if ((step + 1) % opts.reproject_every == 0 && std::abs(delta) > 1e-12) {
            const cplx nrm = iu * sigma * std::exp(-iu * std::arg(delta));
            const double dnu = -drift_red / (sigma * std::abs(delta));
            const cplx s_corr = s + nrm * dnu;
            const cplx d_corr = sqrt_near(model::delta2(p, s_corr), delta);
            drift_red += (0.5 * (delta + d_corr) * (s_corr - s)).imag();
            s = s_corr;
            delta = d_corr;
        }

        line.points.push_back(s);
        line.gamma_drift.push_back(x_scale * drift_red);
        if (std::abs(x_scale * drift_red) > 100.0 * tol().trace_drift)
            throw DriftExceeded("trace: gamma drift exceeded tolerance");

        // Terminal conditions.
        if (prev_im > 0.0 && s.imag() <= 0.0) {
            const cplx a = line.points[line.points.size() - 2];
            const double t = a.imag() / (a.imag() - s.imag());
            line.real_axis_cross = a + t * (s - a);
            line.crossed_real_axis = true;
            if (opts.stop_at_real_axis) {
                line.points.back() = line.real_axis_cross;
                line.terminal = Terminal::RealAxisCross;
                return line;
            }
        }
        prev_im = s.imag();
        if (s.imag() > opts.im_cap) {
            line.terminal = Terminal::ImagAsymptote;
            return line;
        }
        if (std::abs(s.real()) > opts.re_cap) {
            line.terminal = Terminal::RealCap;
            return line;
        }
        for (std::size_t i = 0; i < catalog.size(); ++i) {
            if (std::abs(catalog[i].s - origin.s) < 1e-12) continue;
            if (std::abs(s - catalog[i].s) < opts.stall_radius) {
                line.terminal = Terminal::TPReached;
                line.reached_tp = static_cast<int>(i);
                return line;
            }
        }
    }
    line.terminal = Terminal::StepLimit;
    return line;
}

double crossing_constant(const ReducedPulseParams& p, int k) {
    if (k < 1) throw std::invalid_argument("crossing_constant: k must be >= 1");
    if (!(p.alpha_bar > 0.0))
        throw std::invalid_argument("crossing_constant: requires alpha_bar > 0");
    const double base = k * pi + 0.25 * pi;
    return base + std::sqrt(base) * (1.0 - std::log(k * p.alpha_bar * pi) / (4.0 * pi * k));
}

std::vector<double> real_axis_crossings(const ReducedPulseParams& p, int k_lo, int k_hi) {
    std::vector<double> out;
    for (int k = std::max(1, k_lo); k <= k_hi; ++k)
        out.push_back(0.5 * p.alpha_bar * p.x * crossing_constant(p, k));
    return out;
}

} // namespace epenc::equivalue
