#include "epenc/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "epenc/model.hpp"
#include "epenc/ode.hpp"
#include "epenc/residua.hpp"
#include "epenc/tpoints.hpp"

namespace epenc::oracle {

namespace {

cplx sqrt_near(cplx w, cplx ref) {
    const cplx r = std::sqrt(w);
    return (std::abs(r - ref) <= std::abs(-r - ref)) ? r : -r;
}

// Anchored branch value on the real axis far in the left asymptote.
cplx delta_left_asymptote(const ReducedPulseParams& p, double S) {
    return cplx{0.5 * p.alpha_bar * S, -p.inv_x()};
}

// Dense real-axis table of the tracked split and its cumulative integral
// W(s) = int_0^s delta, on a uniform grid of 2n+1 points over [-S, S].
struct RealAxisTable {
    double S = 0.0;
    double h = 0.0; // fine spacing
    std::vector<double> s;
    std::vector<cplx> delta;
    std::vector<cplx> W;
    std::vector<cplx> N; // non-adiabatic coupling
};

RealAxisTable build_table(const ReducedPulseParams& p, double S, int n) {
    RealAxisTable t;
    const int m = 2 * n + 1;
    t.S = S;
    t.h = 2.0 * S / (m - 1);
    t.s.resize(m);
    t.delta.resize(m);
    t.N.resize(m);
    t.W.resize(m);
    cplx ref = delta_left_asymptote(p, S);
    for (int i = 0; i < m; ++i) {
        t.s[i] = -S + i * t.h;
        ref = sqrt_near(model::delta2(p, cplx{t.s[i], 0.0}), ref);
        t.delta[i] = ref;
        t.N[i] = model::nonadiabatic_coupling(p, cplx{t.s[i], 0.0});
    }
    // Cumulative Simpson anchored at s = 0 (center node of the odd-length grid).
    std::vector<cplx> C(m);
    C[0] = 0.0;
    for (int i = 0; i + 2 < m; i += 2) {
        C[i + 1] = C[i] + t.h / 12.0 * (5.0 * t.delta[i] + 8.0 * t.delta[i + 1] - t.delta[i + 2]);
        C[i + 2] = C[i] + t.h / 3.0 * (t.delta[i] + 4.0 * t.delta[i + 1] + t.delta[i + 2]);
    }
    const cplx C0 = C[n]; // value at s = 0
    for (int i = 0; i < m; ++i) t.W[i] = C[i] - C0;
    return t;
}

} // namespace

cplx first_order_quadrature(const ReducedPulseParams& p, double rtol) {
    p.validate();
    double S = 9.0;
    const double scale = p.area_scale();
    for (int attempt = 0; attempt < 4; ++attempt) {
        // State u = exp(i scale W(s)), v = running amplitude. u(-S) comes from
        // one split integral along the real axis.
        const auto w0 = model::split_integral(p, {{0.0, 0.0}, {-S, 0.0}});
        const cplx W_left{w0.phi_red, w0.gamma_red};
        ode::State<2> y{std::exp(iu * scale * W_left), cplx{0.0, 0.0}};
        cplx ref = delta_left_asymptote(p, S);
        auto rhs = [&](double s, const ode::State<2>& st) {
            const cplx d = sqrt_near(model::delta2(p, cplx{s, 0.0}), ref);
            const cplx Nb = model::nonadiabatic_coupling(p, cplx{s, 0.0});
            return ode::State<2>{iu * scale * d * st[0], -st[0] * Nb};
        };
        std::function<void(double, const ode::State<2>&)> obs =
            [&](double s, const ode::State<2>&) {
                ref = sqrt_near(model::delta2(p, cplx{s, 0.0}), ref);
            };
        const auto yf = ode::integrate<2>(rhs, y, -S, S, rtol, 1e-16, obs);
        const double edge = std::max(std::abs(y[0] * model::nonadiabatic_coupling(p, cplx{-S, 0.0})),
                                     std::abs(yf[0] * model::nonadiabatic_coupling(p, cplx{S, 0.0})));
        if (edge < 1e-14 * std::max(1.0, std::abs(yf[1])) || attempt == 3) return yf[1];
        S += 2.0;
    }
    return {0.0, 0.0};
}

SeriesResult perturbation_series(const ReducedPulseParams& p, int J, int grid_n) {
    p.validate();
    if (J < 1 || J % 2 == 0)
        throw std::invalid_argument("perturbation_series: J must be odd and >= 1");
    const double S = 10.0;
    const double scale = p.area_scale();

    auto run = [&](int n) {
        const RealAxisTable t = build_table(p, S, n);
        const int m = static_cast<int>(t.s.size());
        std::vector<cplx> vprev(m, cplx{1.0, 0.0});
        std::vector<cplx> vj(m);
        std::vector<cplx> f(m);
        std::vector<cplx> orders;
        for (int j = 1; j <= J; ++j) {
            const double sgn = (j % 2 == 1) ? 1.0 : -1.0; // exponent sign e^{+-i scale W}
            for (int i = 0; i < m; ++i)
                f[i] = std::exp(iu * sgn * scale * t.W[i]) * vprev[i] * t.N[i];
            vj[0] = 0.0;
            for (int i = 0; i + 2 < m; i += 2) {
                vj[i + 1] = vj[i] + t.h / 12.0 * (5.0 * f[i] + 8.0 * f[i + 1] - f[i + 2]);
                vj[i + 2] = vj[i] + t.h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
            }
            const double pref = (j % 2 == 1) ? -1.0 : 1.0; // (-)^j
            for (int i = 0; i < m; ++i) vj[i] *= pref;
            orders.push_back(vj[m - 1]);
            std::swap(vprev, vj);
            // vprev now holds (-)^j * integral; the recursion wants v^{(j)} itself,
            // which is exactly that value.
        }
        return orders;
    };

    std::vector<cplx> coarse = run(grid_n);
    std::vector<cplx> fine = run(2 * grid_n);
    const double rel = std::abs(coarse.back() - fine.back()) /
                       std::max(std::abs(fine.back()), 1e-300);
    if (rel > 1e-6)
        throw GridTooCoarse("perturbation_series: doubling the grid moved v_J by " +
                            std::to_string(rel));

    SeriesResult out;
    out.orders = fine;
    cplx acc{0.0, 0.0};
    for (int j = 1; j <= J; j += 2) {
        acc += out.orders[j - 1];
        out.odd_sums.push_back(acc);
    }
    double ratio_acc = 0.0;
    int cnt = 0;
    for (int j = 1; j + 2 <= J; j += 2) {
        const double a = std::abs(out.orders[j - 1]);
        const double b = std::abs(out.orders[j + 1]);
        if (a > 0.0) {
            ratio_acc += b / a;
            ++cnt;
        }
    }
    out.ratio_estimate = cnt ? ratio_acc / cnt : 0.0;
    out.converged = out.ratio_estimate < 1.0 && !out.orders.empty();
    return out;
}

PropagationResult propagate_tdse(const ReducedPulseParams& p, double rtol, double S) {
    p.validate();
    const double scale = p.area_scale();
    while (scale * std::exp(-0.5 * S * S) > 1e-16) S += 2.0;

    auto rhs = [&](double s, const ode::State<2>& c) {
        const double om = std::exp(-0.5 * s * s);
        const cplx det = 0.5 * p.alpha_bar * s + iu * p.inv_x();
        return ode::State<2>{-iu * scale * (0.5 * om * c[1]),
                             -iu * scale * (0.5 * om * c[0] + det * c[1])};
    };
    PropagationResult out;
    double max_gain = 0.0;
    double prev_norm = 1.0;
    const double damping = p.damping_scale();
    std::function<void(double, const ode::State<2>&)> obs =
        [&](double s, const ode::State<2>& c) {
            const double w = std::exp(-2.0 * damping * (s + S));
            const double norm = std::norm(c[0]) + std::norm(c[1]) * w;
            max_gain = std::max(max_gain, norm - prev_norm);
            prev_norm = norm;
        };
    ode::State<2> c0{cplx{1.0, 0.0}, cplx{0.0, 0.0}};
    const auto cf = ode::integrate<2>(rhs, c0, -S, S, rtol, 1e-16, obs);
    // Remove the chirp frame phase relating the basis vector to the free
    // bound state; p1 is insensitive to it.
    const double frame = 0.5 * p.alpha_bar * scale * S * S;
    out.a1 = cf[0] * std::exp(iu * frame);
    out.p1 = std::norm(cf[0]);
    out.max_norm_gain = max_gain;
    return out;
}

FiniteThetaFit fit_finite_theta(const std::vector<ReducedPulseParams>& sweep,
                                const std::vector<double>& theta_list) {
    if (theta_list.size() < 2)
        throw std::invalid_argument("fit_finite_theta: need at least two theta values");
    for (std::size_t i = 1; i < theta_list.size(); ++i)
        if (theta_list[i] <= theta_list[i - 1])
            throw std::invalid_argument("fit_finite_theta: theta list must ascend");

    FiniteThetaFit out;
    const int nwin = static_cast<int>(theta_list.size()) - 1;
    for (int w = 0; w < nwin; ++w)
        out.window_theta.push_back(0.5 * (theta_list[w] + theta_list[w + 1]));
    std::vector<std::vector<double>> odd_acc(nwin), even_acc(nwin);

    for (const auto& base : sweep) {
        const auto tag = tpoints::classify_layout(base);
        FitPoint pt;
        pt.x = base.x;
        pt.R = tag.R;
        pt.even_side = tag.kind == tpoints::LayoutKind::Even;

        std::vector<double> w_amp; // -Re v1 per theta
        for (double th : theta_list) {
            ReducedPulseParams p = base;
            p.theta = th;
            const cplx v1 = first_order_quadrature(p);
            const double amp = -v1.real();
            if (!(amp > 1e-280))
                throw FitIllConditioned("fit_finite_theta: amplitude underflow at x = " +
                                        std::to_string(base.x));
            w_amp.push_back(amp);
        }

        double phi_red = 0.0;
        if (pt.even_side) {
            if (theta_list.size() < 3)
                throw std::invalid_argument(
                    "fit_finite_theta: even side needs at least three theta values");
            // Solve the three-parameter form ln a - c gamma + ln|cos(c phi)|
            // through the three smallest thetas, Newton on (ln a, gamma, phi).
            const auto central = tpoints::find_central(base);
            const auto seed_res = residua::gamma_phi_at(base, central.front());
            double la = std::log(2.0 * pi / 3.0);
            double g = seed_res.gamma_red;
            double f = std::abs(seed_res.phi_red);
            for (int it = 0; it < 60; ++it) {
                double J[3][3], r[3];
                for (int i = 0; i < 3; ++i) {
                    const double c = theta_list[i] / std::sqrt(2.0 * pi);
                    const double cosv = std::cos(c * f);
                    r[i] = la - c * g + std::log(std::abs(cosv)) - std::log(w_amp[i]);
                    J[i][0] = 1.0;
                    J[i][1] = -c;
                    J[i][2] = -c * std::tan(c * f);
                }
                // Solve 3x3 by Gaussian elimination.
                double A[3][4];
                for (int i = 0; i < 3; ++i) {
                    A[i][0] = J[i][0]; A[i][1] = J[i][1]; A[i][2] = J[i][2]; A[i][3] = -r[i];
                }
                for (int col = 0; col < 3; ++col) {
                    int piv = col;
                    for (int row = col + 1; row < 3; ++row)
                        if (std::abs(A[row][col]) > std::abs(A[piv][col])) piv = row;
                    std::swap(A[piv], A[col]);
                    if (std::abs(A[col][col]) < 1e-14)
                        throw FitIllConditioned("fit_finite_theta: singular normal equations");
                    for (int row = col + 1; row < 3; ++row) {
                        const double fr = A[row][col] / A[col][col];
                        for (int cc = col; cc < 4; ++cc) A[row][cc] -= fr * A[col][cc];
                    }
                }
                double d[3];
                for (int row = 2; row >= 0; --row) {
                    double acc = A[row][3];
                    for (int cc = row + 1; cc < 3; ++cc) acc -= A[row][cc] * d[cc];
                    d[row] = acc / A[row][row];
                }
                la += d[0];
                g += d[1];
                f += d[2];
                if (std::abs(d[0]) + std::abs(d[1]) + std::abs(d[2]) < 1e-13) break;
            }
            pt.gamma_red_fit = g;
            pt.phi_red_fit = f;
            phi_red = f;
        }

        // Per-window two-point solve; on the even side first divide out the
        // fitted cosine.
        for (int w = 0; w < nwin; ++w) {
            const double th_a = theta_list[w], th_b = theta_list[w + 1];
            double wa = w_amp[w], wb = w_amp[w + 1];
            if (pt.even_side) {
                const double ca = std::cos(th_a / std::sqrt(2.0 * pi) * phi_red);
                const double cb = std::cos(th_b / std::sqrt(2.0 * pi) * phi_red);
                if (std::abs(ca) < 1e-6 || std::abs(cb) < 1e-6)
                    throw FitIllConditioned("fit_finite_theta: theta window hits a Rabi node");
                wa /= std::abs(ca);
                wb /= std::abs(cb);
            }
            const double ca = th_a / std::sqrt(2.0 * pi), cb = th_b / std::sqrt(2.0 * pi);
            const double g_win = (std::log(wa) - std::log(wb)) / (cb - ca);
            const double a_win = std::exp(std::log(wa) + ca * g_win);
            pt.prefactor.push_back(a_win);
            (pt.even_side ? even_acc : odd_acc)[w].push_back(a_win);
            if (!pt.even_side && w == 0) pt.gamma_red_fit = g_win;
        }
        out.points.push_back(std::move(pt));
    }

    auto aggregate = [](const std::vector<std::vector<double>>& acc,
                        std::vector<double>& mean, std::vector<double>& se) {
        for (const auto& col : acc) {
            if (col.empty()) {
                mean.push_back(0.0);
                se.push_back(0.0);
                continue;
            }
            double m = 0.0;
            for (double v : col) m += v;
            m /= col.size();
            double var = 0.0;
            for (double v : col) var += (v - m) * (v - m);
            var = col.size() > 1 ? var / (col.size() - 1) : 0.0;
            mean.push_back(m);
            se.push_back(std::sqrt(var / std::max<std::size_t>(col.size(), 1)));
        }
    };
    aggregate(odd_acc, out.odd_prefactor_mean, out.odd_prefactor_se);
    aggregate(even_acc, out.even_prefactor_mean, out.even_prefactor_se);
    return out;
}

} // namespace epenc::oracle
