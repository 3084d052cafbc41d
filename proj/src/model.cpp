#include "epenc/model.hpp"

#include <algorithm>
#include <cmath>

#include "epenc/quadrature.hpp"

namespace epenc::model {

namespace {

// Square root of w continuous with a reference value: the principal root or
// its negative, whichever lies closer to ref.
cplx sqrt_near(cplx w, cplx ref) {
    const cplx r = std::sqrt(w);
    return (std::abs(r - ref) <= std::abs(-r - ref)) ? r : -r;
}

double principal_arg_jump(cplx a, cplx b) {
    if (a == cplx{} || b == cplx{}) return pi; // force refinement at a zero
    return std::abs(std::arg(b / a));
}

} // namespace

BranchPath::BranchPath(const ReducedPulseParams& p, std::vector<cplx> vertices,
                       std::vector<cplx> guard_points, cplx anchor, bool ends_at_tp)
    : params_(p), vertices_(std::move(vertices)), terminal_tp_(ends_at_tp) {
    if (vertices_.size() < 1) throw std::invalid_argument("BranchPath: empty path");
    cplx start_delta = anchor;
    if (start_delta == cplx{0.0, 0.0}) {
        // Anchor by continuation from s = 0 along a straight lead-in segment.
        if (std::abs(vertices_.front()) > 1e-14) {
            std::vector<cplx> lead = {cplx{0.0, 0.0}, vertices_.front()};
            BranchPath lead_path(p, lead, guard_points, anchor_delta(p));
            start_delta = lead_path.nodes().back().delta;
        } else {
            start_delta = anchor_delta(p);
        }
    }
    nodes_.push_back({0.0, vertices_.front(), start_delta});
    vertex_u_.push_back(0.0);
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
        const bool stop_short = terminal_tp_ && (i + 2 == vertices_.size());
        march_segment(vertices_[i], vertices_[i + 1], guard_points, stop_short);
        vertex_u_.push_back(
            stop_short ? nodes_.back().u + std::abs(vertices_[i + 1] - nodes_.back().s)
                       : nodes_.back().u);
    }
}

void BranchPath::march_segment(cplx a, cplx b, const std::vector<cplx>& guards,
                               bool stop_short) {
    const double len = std::abs(b - a);
    if (len == 0.0) return;
    const double guard = tol().continuation_guard;
    // A terminal branch point cannot be reached by continuation; stop a guard
    // distance short and let delta_near extend with the local sqrt scaling.
    const double t_end = stop_short ? 1.0 - std::max(guard, 1e-6 * len) / len : 1.0;
    double t = 0.0;
    double dt = std::min(1.0, 0.05 / std::max(len, 1e-30));
    cplx prev_d2 = delta2(params_, a);
    while (t < t_end) {
        double step = std::min(dt, t_end - t);
        cplx s_new;
        cplx d2_new;
        for (;;) {
            s_new = a + (t + step) * (b - a);
            d2_new = delta2(params_, s_new);
            if (principal_arg_jump(prev_d2, d2_new) <= 0.5 * pi) break;
            step *= 0.5;
            if (step * len < 1e-13)
                throw ContinuationAmbiguous(
                    "branch continuation: step underflow (path passes through a zero of "
                    "delta2?)");
        }
        for (const cplx& g : guards)
            if (std::abs(s_new - g) < guard)
                throw TooCloseToTP("branch continuation: path within guard radius of a TP");
        const cplx ref = nodes_.back().delta;
        const cplx d_new = sqrt_near(d2_new, ref);
        if (std::abs(d_new - ref) >= std::abs(d_new + ref) - 1e-14 * std::abs(d_new) &&
            std::abs(d_new) > 0.0 && std::abs(ref) > 0.0)
            throw ContinuationAmbiguous("branch continuation: candidate branches indistinct");
        t += step;
        nodes_.push_back({nodes_.back().u + step * len, s_new, d_new});
        prev_d2 = d2_new;
        dt = std::min(2.0 * step, 0.05 / std::max(len, 1e-30) * 4.0);
    }
}

std::size_t BranchPath::bracket(double u) const {
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), u,
                               [](double v, const Node& n) { return v < n.u; });
    if (it == nodes_.begin()) return 0;
    return static_cast<std::size_t>(it - nodes_.begin()) - 1;
}

cplx BranchPath::point_at(double u) const {
    if (vertex_u_.size() < 2) return vertices_.front();
    // Walk the vertex table; u is a chord-length parameter.
    for (std::size_t i = 0; i + 1 < vertex_u_.size(); ++i) {
        if (u <= vertex_u_[i + 1] || i + 2 == vertex_u_.size()) {
            const double seg = vertex_u_[i + 1] - vertex_u_[i];
            const double t = seg > 0.0 ? (u - vertex_u_[i]) / seg : 0.0;
            return vertices_[i] + t * (vertices_[i + 1] - vertices_[i]);
        }
    }
    return vertices_.back();
}

cplx BranchPath::delta_at(double u) const { return delta_near(point_at(u), u); }

cplx BranchPath::delta_near(cplx s, double u) const {
    if (terminal_tp_ && u > nodes_.back().u) {
        // Past the last spine node toward the terminal branch point: scale the
        // last value with the local square-root law to keep the sign resolved.
        const cplx b = vertices_.back();
        const Node& last = nodes_.back();
        const cplx ratio = (s - b) / (last.s - b);
        const cplx ref = last.delta * std::sqrt(ratio);
        return sqrt_near(delta2(params_, s), ref);
    }
    const std::size_t i = bracket(u);
    const Node& lo = nodes_[i];
    const Node& hi = nodes_[std::min(i + 1, nodes_.size() - 1)];
    cplx ref;
    if (hi.u > lo.u) {
        const double t = std::clamp((u - lo.u) / (hi.u - lo.u), 0.0, 1.0);
        ref = lo.delta + t * (hi.delta - lo.delta);
    } else {
        ref = lo.delta;
    }
    return sqrt_near(delta2(params_, s), ref);
}

std::vector<ComplexPathPoint> quasi_split(const ReducedPulseParams& p,
                                          const std::vector<cplx>& path,
                                          const std::vector<cplx>& guard_points) {
    p.validate();
    BranchPath bp(p, path, guard_points);
    std::vector<ComplexPathPoint> out;
    out.reserve(path.size());
    double phase = std::arg(bp.nodes().front().delta);
    std::size_t node_ix = 0;
    for (std::size_t v = 0; v < path.size(); ++v) {
        const double u = bp.vertex_u()[v];
        // Accumulate the branch phase continuously up to this vertex.
        while (node_ix + 1 < bp.nodes().size() && bp.nodes()[node_ix + 1].u <= u) {
            const cplx a = bp.nodes()[node_ix].delta;
            const cplx b = bp.nodes()[node_ix + 1].delta;
            if (a != cplx{} && b != cplx{}) phase += std::arg(b / a);
            ++node_ix;
        }
        out.push_back({path[v], bp.delta_at(u), phase});
    }
    return out;
}

cplx nonadiabatic_coupling(const ReducedPulseParams& p, cplx s,
                           const std::vector<cplx>& known_tps) {
    for (const cplx& tp : known_tps)
        if (std::abs(s - tp) < tol().continuation_guard)
            throw PoleProximity("nonadiabatic_coupling: s within guard radius of a TP");
    // N = (1/2) dlambda/ds / (1 + lambda^2) with 1 + lambda^2 = exp(s^2) delta2(s).
    const cplx dlam_scaled =
        (0.5 * p.alpha_bar * (s * s + 1.0) + iu * s * p.inv_x()) * std::exp(-0.5 * s * s);
    return 0.5 * dlam_scaled / delta2(p, s);
}

cplx integrate_delta(const ReducedPulseParams& p, const std::vector<cplx>& path,
                     const SplitIntegralOptions& opts) {
    p.validate();
    if (path.size() < 2) return {0.0, 0.0};
    const double abs_tol = opts.abs_tol > 0.0 ? opts.abs_tol : tol().quad_abs;
    BranchPath bp(p, path, opts.guard_points, {0.0, 0.0}, opts.ends_at_tp);
    cplx total{0.0, 0.0};
    const std::size_t nseg = path.size() - 1;
    for (std::size_t i = 0; i < nseg; ++i) {
        const cplx a = path[i];
        const cplx b = path[i + 1];
        const cplx dir = b - a;
        if (dir == cplx{}) continue;
        const double ua = bp.vertex_u()[i];
        const double ub = bp.vertex_u()[i + 1];
        const bool tp_end = opts.ends_at_tp && i + 1 == nseg;
        if (!tp_end) {
            auto f = [&](double t) {
                const cplx s = a + t * dir;
                return bp.delta_near(s, ua + t * (ub - ua)) * dir;
            };
            total += quad::adaptive(f, 0.0, 1.0, abs_tol);
        } else {
            // delta ~ beta sqrt(s - b) near the terminal branch point: substitute
            // t = 1 - w^2 so the integrand is smooth in w.
            auto f = [&](double w) {
                const double t = 1.0 - w * w;
                const cplx s = a + t * dir;
                return bp.delta_near(s, ua + t * (ub - ua)) * dir * (2.0 * w);
            };
            total += quad::adaptive(f, 0.0, 1.0, abs_tol);
        }
    }
    return total;
}

SplitIntegrals split_integral(const ReducedPulseParams& p, const std::vector<cplx>& path,
                              const SplitIntegralOptions& opts) {
    if (!path.empty() && std::abs(path.front()) > 1e-12)
        throw std::invalid_argument("split_integral: path must start at s = 0");
    const cplx total = integrate_delta(p, path, opts);
    return SplitIntegrals{total.imag(), total.real(), p.x};
}

std::vector<double> real_axis_split_minima(const ReducedPulseParams& p, double s_hi) {
    const int n = 2400;
    std::vector<double> minima;
    auto re_delta = [&](double s) {
        // On the real axis Im delta2 = alpha_bar s / x >= 0 for s >= 0, so the
        // anchored branch is the principal square root.
        return std::sqrt(delta2(p, cplx{s, 0.0})).real();
    };
    double prev = re_delta(0.0);
    double cur = re_delta(s_hi / n);
    for (int i = 2; i <= n; ++i) {
        const double next = re_delta(i * s_hi / n);
        if (cur < prev && cur <= next) {
            // Golden-section polish inside the bracketing interval.
            double a = (i - 2) * s_hi / n, b = i * s_hi / n;
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
            double f1 = re_delta(x1), f2 = re_delta(x2);
            for (int it = 0; it < 80; ++it) {
                if (f1 < f2) {
                    b = x2; x2 = x1; f2 = f1;
                    x1 = b - gr * (b - a); f1 = re_delta(x1);
                } else {
                    a = x1; x1 = x2; f1 = f2;
                    x2 = a + gr * (b - a); f2 = re_delta(x2);
                }
            }
            minima.push_back(0.5 * (a + b));
        }
        prev = cur;
        cur = next;
    }
    return minima;
}

} // namespace epenc::model
