// quadrature.hpp — adaptive Gauss–Kronrod panels for complex-valued integrands

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "epenc/types.hpp"

namespace epenc::quad {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kronrod_x = {
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
};
inline constexpr std::array<double, 8> kronrod_w = {
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
};
inline constexpr std::array<double, 4> gauss_w = {
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
};

struct PanelResult {
    cplx integral{0.0, 0.0};
    double error = 0.0;
};

template <class F>
PanelResult gk15(const F& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    const cplx fc = f(c);
    cplx kron = kronrod_w[0] * fc;
    cplx gauss = gauss_w[0] * fc;
    for (int j = 1; j < 8; ++j) {
        const cplx fl = f(c - h * kronrod_x[j]);
        const cplx fr = f(c + h * kronrod_x[j]);
        kron += kronrod_w[j] * (fl + fr);
        if (j % 2 == 0) gauss += gauss_w[j / 2] * (fl + fr);
    }
    PanelResult r;
    r.integral = kron * h;
    r.error = std::abs((kron - gauss) * h);
    return r;
}

// Adaptive bisection to an absolute tolerance. The integrand must be smooth
// on the open interval; endpoint square-root behavior is handled by the
// callers via substitution, not here.
template <class F>
cplx adaptive(const F& f, double a, double b, double abs_tol, int max_depth = 48) {
    struct Seg {
        double a, b;
        int depth;
    };
    cplx total{0.0, 0.0};
    std::array<Seg, 2048> stack;
    int top = 0;
    stack[top++] = {a, b, 0};
    while (top > 0) {
        const Seg s = stack[--top];
        const PanelResult r = gk15(f, s.a, s.b);
        const double local_tol = abs_tol * (s.b - s.a) / (b - a);
        if (r.error <= std::max(local_tol, 1e-16 * std::abs(r.integral)) ||
            s.depth >= max_depth) {
            total += r.integral;
            continue;
        }
        if (top + 2 >= static_cast<int>(stack.size()))
            throw std::runtime_error("adaptive quadrature: subdivision stack exhausted");
        const double m = 0.5 * (s.a + s.b);
        stack[top++] = {s.a, m, s.depth + 1};
        stack[top++] = {m, s.b, s.depth + 1};
    }
    return total;
}

} // namespace epenc::quad
