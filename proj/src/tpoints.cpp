#include "epenc/tpoints.hpp"

#include <algorithm>
#include <cmath>

#include "epenc/model.hpp"

namespace epenc::tpoints {

const char* role_name(TpRole role) {
    switch (role) {
        case TpRole::CentralEvenRight: return "central_even_right";
        case TpRole::CentralEvenLeft: return "central_even_left";
        case TpRole::CentralOddLower: return "central_odd_lower";
        case TpRole::CentralOddUpper: return "central_odd_upper";
        case TpRole::Coalescent: return "coalescent";
        case TpRole::AsymptoticRight: return "asymptotic_right";
        case TpRole::AsymptoticLeft: return "asymptotic_left";
    }
    return "?";
}

const char* layout_name(LayoutKind kind) {
    switch (kind) {
        case LayoutKind::Even: return "even";
        case LayoutKind::Odd: return "odd";
        case LayoutKind::Coalescent: return "coalescent";
    }
    return "?";
}

namespace {
constexpr double coalescence_tol = 1e-6;

double separator_radius(const ReducedPulseParams& p) {
    const double eta = xi_coal(p);
    return std::exp(-0.5 * eta * eta) * (0.5 * p.alpha_bar * eta + p.inv_x());
}
} // namespace

LayoutTag classify_layout(const ReducedPulseParams& p) {
    p.validate();
    const double R = separator_radius(p);
    LayoutTag tag;
    tag.R = R;
    if (std::abs(R - 1.0) < coalescence_tol)
        tag.kind = LayoutKind::Coalescent;
    else
        tag.kind = (R < 1.0) ? LayoutKind::Even : LayoutKind::Odd;
    return tag;
}

double separator_alpha(double x) {
    if (!(x >= 1.0)) throw NoRoot("separator_alpha: no coalescence exists for x < 1");
    if (x == 1.0) return 0.0;
    const double amax = 2.0 * std::sqrt(std::exp(1.0));
    if (std::isinf(x)) return amax;
    auto gap = [&](double a) {
        return separator_radius(ReducedPulseParams{x, a, 1.0}) - 1.0;
    };
    double lo = 0.0, hi = amax;
    if (gap(hi) < 0.0) hi = amax * 1.5; // not expected; widen defensively
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) < 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-14) break;
    }
    return 0.5 * (lo + hi);
}

cplx refine(const ReducedPulseParams& p, cplx guess, int max_iter) {
    cplx s = guess;
    for (int it = 0; it < max_iter; ++it) {
        const cplx f = model::delta2(p, s);
        if (std::abs(f) < tol().newton_residual) return s;
        const cplx df = model::ddelta2(p, s);
        if (df == cplx{}) break;
        const cplx step = f / df;
        s -= step;
        if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(s))) {
            if (std::abs(model::delta2(p, s)) < 1e-10) return s;
            break;
        }
    }
    if (std::abs(model::delta2(p, s)) < 1e-10) return s;
    throw ConvergenceFailure("tpoints::refine: Newton did not converge");
}

int pole_sign(const ReducedPulseParams& p, cplx s_k) {
    // Res N = 1/(4 lambda_bar(s_k)) = z_k/(4i), so z_k = i/lambda_bar.
    const cplx lam = model::lambda_bar(p, s_k);
    if (std::abs(lam - iu) < 0.3) return 1;
    if (std::abs(lam + iu) < 0.3) return -1;
    throw ConvergenceFailure("pole_sign: lambda_bar not close to +/-i at the given point");
}

namespace {

// Bisection + Newton polish for a root of the on-axis gap in [lo, hi].
double on_axis_root(const ReducedPulseParams& p, double lo, double hi) {
    double flo = on_axis_gap(p, lo);
    double fhi = on_axis_gap(p, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        throw ConvergenceFailure("find_central: on-axis bracket carries no sign change");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = on_axis_gap(p, mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
        if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

TransitionPoint make_tp(const ReducedPulseParams& p, int k, cplx s, TpRole role) {
    TransitionPoint tp;
    tp.k = k;
    tp.s = s;
    tp.role = role;
    tp.residual = std::abs(model::delta2(p, s));
    tp.z = pole_sign(p, s);
    return tp;
}

} // namespace

std::vector<TransitionPoint> find_central(const ReducedPulseParams& p) {
    p.validate();
    const LayoutTag tag = classify_layout(p);
    std::vector<TransitionPoint> out;

    if (tag.kind == LayoutKind::Coalescent) {
        const cplx s = iu * xi_coal(p);
        out.push_back(make_tp(p, 0, s, TpRole::Coalescent));
        return out;
    }

    if (tag.kind == LayoutKind::Odd) {
        if (p.inv_x() > 1.0)
            throw ConvergenceFailure(
                "find_central: x < 1 leaves a single on-axis zero; outside supported domain");
        const double xc = xi_coal(p);
        const double xi_low = on_axis_root(p, 0.0, xc);
        double hi = xc + 10.0;
        while (on_axis_gap(p, hi) < 0.0) hi += 10.0;
        const double xi_upp = on_axis_root(p, xc, hi);
        const cplx s_low = refine(p, iu * xi_low);
        const cplx s_upp = refine(p, iu * xi_upp);
        out.push_back(make_tp(p, 0, cplx{0.0, s_low.imag()}, TpRole::CentralOddLower));
        out.push_back(make_tp(p, 0, cplx{0.0, s_upp.imag()}, TpRole::CentralOddUpper));
        return out;
    }

    // Even layout: quadratic seed from the parabolic approximation, Newton on
    // delta2, mirror partner refined from -conj(s0).
    const double disc = p.alpha_bar * p.alpha_bar + 8.0 * (p.inv_x() - 1.0);
    const double re_seed = 0.5 * std::sqrt(std::abs(disc));
    const cplx seed{std::max(re_seed, 0.05), 0.5 * std::max(p.alpha_bar, 0.2)};
    cplx s0 = refine(p, seed);
    if (s0.real() < 0.0) s0 = -std::conj(s0);
    if (!(s0.real() > 0.0) || !(s0.imag() > 0.0))
        throw ConvergenceFailure("find_central: even-layout root left the first quadrant");
    const cplx s0m = refine(p, -std::conj(s0));
    out.push_back(make_tp(p, 0, s0, TpRole::CentralEvenRight));
    out.push_back(make_tp(p, 0, s0m, TpRole::CentralEvenLeft));
    return out;
}

std::pair<cplx, cplx> asymptotic_guess(const ReducedPulseParams& p, int k) {
    if (k < 1) throw std::invalid_argument("asymptotic_guess: k must be >= 1");
    if (!(p.alpha_bar > 0.0))
        throw std::invalid_argument("asymptotic_guess: requires alpha_bar > 0");
    const cplx w = cplx{-std::log(2.0 * k * pi) - 2.0 * std::log(0.5 * p.alpha_bar),
                        2.0 * pi * k + 0.5 * pi};
    const cplx s = std::sqrt(w);
    return {s, -std::conj(s)};
}

std::vector<TransitionPoint> enumerate_tps(const ReducedPulseParams& p, int K) {
    if (K < 0) throw std::invalid_argument("enumerate_tps: K must be >= 0");
    std::vector<TransitionPoint> out = find_central(p);
    if (K >= 1 && !(p.alpha_bar > 0.0))
        throw std::invalid_argument("enumerate_tps: asymptotic series requires alpha_bar > 0");
    for (int k = 1; k <= K; ++k) {
        const auto [gr, gl] = asymptotic_guess(p, k);
        cplx sr, sl;
        try {
            sr = refine(p, gr);
            sl = refine(p, gl);
        } catch (const ConvergenceFailure&) {
            throw ConvergenceFailure("enumerate_tps: refinement failed at k = " +
                                     std::to_string(k));
        }
        TransitionPoint r = make_tp(p, k, sr, TpRole::AsymptoticRight);
        TransitionPoint l = make_tp(p, k, sl, TpRole::AsymptoticLeft);
        if (!(r.s.imag() > 0.0) || !(l.s.imag() > 0.0))
            throw ConvergenceFailure("enumerate_tps: refined root left the upper half-plane at k = " +
                                     std::to_string(k));
        out.push_back(r);
        out.push_back(l);
    }
    return out;
}

std::vector<cplx> positions(const std::vector<TransitionPoint>& tps) {
    std::vector<cplx> out;
    out.reserve(tps.size());
    for (const auto& t : tps) out.push_back(t.s);
    return out;
}

} // namespace epenc::tpoints
