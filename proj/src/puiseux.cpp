#include "epenc/puiseux.hpp"

#include <cmath>

#include "epenc/model.hpp"

namespace epenc::puiseux {

namespace {

// The closed form gives beta^2; the sign of the root is fixed by the
// documented limiting phases and continuity between them:
//   right-side and on-axis points:  arg beta in [-3pi/4, -pi/4]  -> Im < 0
//   left-side (mirrored) points:    arg beta in [0, pi/8]-ish    -> Re > 0
cplx resolve_sign(cplx root, const tpoints::TransitionPoint& tp) {
    const bool left = tp.role == tpoints::TpRole::CentralEvenLeft ||
                      tp.role == tpoints::TpRole::AsymptoticLeft;
    if (left) {
        if (root.real() < 0.0 || (root.real() == 0.0 && root.imag() < 0.0)) return -root;
        return root;
    }
    if (root.imag() > 0.0 || (root.imag() == 0.0 && root.real() < 0.0)) return -root;
    return root;
}

} // namespace

PuiseuxData beta1(const ReducedPulseParams& p, const tpoints::TransitionPoint& tp) {
    if (tp.role == tpoints::TpRole::Coalescent)
        throw std::invalid_argument("beta1: coalescent point is second order; use beta2_coal");
    const cplx b2 = model::ddelta2(p, tp.s);
    const cplx beta = resolve_sign(std::sqrt(b2), tp);
    return PuiseuxData{tp, 1, beta, std::arg(beta)};
}

PuiseuxData beta2_coal(const ReducedPulseParams& p) {
    const auto tag = tpoints::classify_layout(p);
    if (tag.kind != tpoints::LayoutKind::Coalescent)
        throw std::invalid_argument("beta2_coal: layout is not coalescent");
    const auto central = tpoints::find_central(p);
    const cplx s = central.front().s;
    // beta^2 = d2(delta2)/ds^2 / 2 at the double point.
    cplx root = std::sqrt(0.5 * model::d2delta2(p, s));
    if (root.imag() > 0.0 || (root.imag() == 0.0 && root.real() < 0.0)) root = -root;
    return PuiseuxData{central.front(), 2, root, std::arg(root)};
}

ProductReport verify_product(const ReducedPulseParams& p,
                             const std::vector<tpoints::TransitionPoint>& catalog,
                             const tpoints::TransitionPoint& tp) {
    ProductReport rep{};
    const PuiseuxData pd = beta1(p, tp);
    rep.beta1 = pd.beta;
    rep.d1_analytic = model::ddelta2(p, tp.s);
    rep.d1_discrepancy = std::abs(pd.beta * pd.beta - rep.d1_analytic);

    // Central finite difference of d(delta2)/ds for the second derivative.
    const double h = 1e-5 * std::max(1.0, std::abs(tp.s));
    const cplx fd2 =
        (model::ddelta2(p, tp.s + h) - model::ddelta2(p, tp.s - h)) / (2.0 * h);
    rep.d2_fd_discrepancy = std::abs(fd2 - model::d2delta2(p, tp.s));
    rep.beta3 = (std::abs(pd.beta) > 0.0) ? fd2 / (4.0 * pd.beta) : cplx{};

    rep.mirror_beta1 = cplx{};
    rep.symmetry_discrepancy = 0.0;
    for (const auto& other : catalog) {
        if (&other == &tp) continue;
        if (other.k == tp.k && std::abs(other.s + std::conj(tp.s)) < 1e-8 &&
            std::abs(other.s - tp.s) > 1e-10) {
            const cplx mb = beta1(p, other).beta;
            rep.mirror_beta1 = mb;
            rep.symmetry_discrepancy = std::abs(mb + iu * std::conj(pd.beta));
        }
    }
    return rep;
}

} // namespace epenc::puiseux
