// params.hpp — physical pulse parameters and their dimensionless reduction

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "epenc/types.hpp"

namespace epenc {

// Physical description of a linearly chirped Gaussian pulse driving a
// bound-to-resonance two-level transition.
struct PhysicalPulseParams {
    double mu = 1.0;       // transition dipole (real)
    double gamma = 1.0;    // resonance width
    double tau = 1.0;      // pulse length
    double eps0_max = 1.0; // peak field amplitude
    double alpha = 0.0;    // linear chirp rate
    double hbar = 1.0;
};

// Dimensionless triple that fully determines the dynamics. x may be the
// Hermitian sentinel (infinity); all internal formulas consume inv_x so the
// sentinel simply drops the 1/x terms instead of pushing a huge float
// through the algebra.
struct ReducedPulseParams {
    double x = 2.0;         // relative laser strength (may be +inf)
    double alpha_bar = 1.0; // effective chirp, canonically >= 0
    double theta = 1.0;     // pulse area (radians)

    bool hermitian() const { return std::isinf(x); }
    double inv_x() const { return hermitian() ? 0.0 : 1.0 / x; }

    // theta / sqrt(2*pi): the exponent scale multiplying the reduced
    // integrals; equals tau*Gamma/(2*hbar) * x in physical terms.
    double area_scale() const { return theta / std::sqrt(2.0 * pi); }

    // theta / (x sqrt(2*pi)) == tau*Gamma/(2*hbar); zero for the sentinel.
    double damping_scale() const { return area_scale() * inv_x(); }

    void validate() const {
        if (!(x > 0.0)) throw std::invalid_argument("ReducedPulseParams: x must be > 0");
        if (!(alpha_bar >= 0.0))
            throw std::invalid_argument("ReducedPulseParams: alpha_bar must be >= 0");
        if (!(theta > 0.0)) throw std::invalid_argument("ReducedPulseParams: theta must be > 0");
    }
};

inline ReducedPulseParams make_params(double x, double alpha_bar, double theta = 4.0 * pi) {
    ReducedPulseParams p{x, alpha_bar, theta};
    if (!(x > 0.0)) throw std::invalid_argument("make_params: x must be > 0");
    if (!(theta > 0.0)) throw std::invalid_argument("make_params: theta must be > 0");
    if (alpha_bar < 0.0) p.alpha_bar = -alpha_bar; // time symmetry maps negative chirp
    return p;
}

// x = 2 mu eps0/Gamma, alpha_bar = (2 hbar/mu)(alpha tau/eps0), theta = mu eps0 tau sqrt(2 pi)/hbar.
inline ReducedPulseParams to_reduced(const PhysicalPulseParams& p) {
    if (!(p.mu > 0.0)) throw std::invalid_argument("to_reduced: mu must be > 0 (real dipole)");
    if (!(p.tau > 0.0)) throw std::invalid_argument("to_reduced: tau must be > 0");
    if (!(p.eps0_max > 0.0)) throw std::invalid_argument("to_reduced: eps0_max must be > 0");
    if (p.gamma < 0.0) throw std::invalid_argument("to_reduced: Gamma must be >= 0");
    if (p.gamma == 0.0)
        throw std::invalid_argument(
            "to_reduced: Gamma = 0 has no finite x; construct the Hermitian case directly "
            "with x = infinity");
    ReducedPulseParams r;
    r.x = 2.0 * p.mu * p.eps0_max / p.gamma;
    r.alpha_bar = std::abs(2.0 * p.hbar / p.mu * p.alpha * p.tau / p.eps0_max);
    r.theta = p.mu * p.eps0_max / p.hbar * p.tau * std::sqrt(2.0 * pi);
    return r;
}

} // namespace epenc
