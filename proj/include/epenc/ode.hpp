// ode.hpp — adaptive Dormand–Prince 5(4) integrator for small complex systems

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "epenc/types.hpp"

namespace epenc::ode {

template <std::size_t N>
using State = std::array<cplx, N>;

struct StepFailure : std::runtime_error {
    explicit StepFailure(const std::string& what) : std::runtime_error(what) {}
};

// Integrates y' = f(t, y) from t0 to t1 with PI step control. The observer,
// when set, is called after each accepted step.
template <std::size_t N, class F>
State<N> integrate(const F& f, State<N> y, double t0, double t1, double rtol = 1e-11,
                   double atol = 1e-14,
                   const std::function<void(double, const State<N>&)>& observer = {}) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    double t = t0;
    double h = dir * std::min(1e-2, std::abs(t1 - t0));
    State<N> k1 = f(t, y);
    std::size_t rejected_in_row = 0;

    auto axpy = [](State<N> base, double w, const State<N>& v) {
        for (std::size_t i = 0; i < N; ++i) base[i] += w * v[i];
        return base;
    };

    while (dir * (t1 - t) > 0.0) {
        if (dir * (t + h - t1) > 0.0) h = t1 - t;
        State<N> y2 = axpy(y, h * a21, k1);
        State<N> k2 = f(t + c2 * h, y2);
        State<N> y3 = axpy(axpy(y, h * a31, k1), h * a32, k2);
        State<N> k3 = f(t + c3 * h, y3);
        State<N> y4 = axpy(axpy(axpy(y, h * a41, k1), h * a42, k2), h * a43, k3);
        State<N> k4 = f(t + c4 * h, y4);
        State<N> y5 = axpy(axpy(axpy(axpy(y, h * a51, k1), h * a52, k2), h * a53, k3), h * a54, k4);
        State<N> k5 = f(t + c5 * h, y5);
        State<N> y6 = axpy(
            axpy(axpy(axpy(axpy(y, h * a61, k1), h * a62, k2), h * a63, k3), h * a64, k4),
            h * a65, k5);
        State<N> k6 = f(t + h, y6);
        State<N> ynew =
            axpy(axpy(axpy(axpy(axpy(y, h * b1, k1), h * b3, k3), h * b4, k4), h * b5, k5),
                 h * b6, k6);
        State<N> k7 = f(t + h, ynew);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const cplx ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                 e6 * k6[i] + e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double w = std::abs(ei) / sc;
            err = std::max(err, w);
        }
        if (err <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7;
            rejected_in_row = 0;
            if (observer) observer(t, y);
        } else if (++rejected_in_row > 64) {
            throw StepFailure("dopri5: step size underflow (64 consecutive rejections)");
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
        if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(t)))
            throw StepFailure("dopri5: step size underflow");
    }
    return y;
}

} // namespace epenc::ode
