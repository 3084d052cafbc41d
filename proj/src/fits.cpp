#include "epenc/fits.hpp"

#include <cmath>
#include <cstring>
#include <sstream>
#include <string>

#include "epenc/tpoints.hpp"

namespace epenc::fits {

NaturalCoords natural_coords(const ReducedPulseParams& p) {
    p.validate();
    NaturalCoords nc;
    nc.X = p.inv_x();
    nc.Y = p.alpha_bar / (2.0 * std::sqrt(std::exp(1.0)));
    nc.varphi = (nc.Y > 0.0) ? std::atan(nc.X / nc.Y) : 0.5 * pi;
    if (nc.X == 0.0 && nc.Y == 0.0) nc.varphi = 0.0;
    nc.eta = tpoints::xi_coal(p);
    nc.R = std::exp(-0.5 * nc.eta * nc.eta) * (0.5 * p.alpha_bar * nc.eta + nc.X);
    return nc;
}

namespace {

FitCoefficients parse(const char* text) {
    FitCoefficients c;
    std::istringstream in(text);
    std::string line;
    int minus_row = 0, plus_row = 0, inf_row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "a") {
            for (auto& v : c.a) ls >> v;
        } else if (key == "b") {
            ls >> c.b0 >> c.b1;
        } else if (key == "c0") {
            ls >> c.c0;
        } else if (key == "a0") {
            for (auto& v : c.a0) ls >> v;
        } else if (key == "cminus") {
            std::string row;
            ls >> row;
            for (auto& v : c.cminus[minus_row]) ls >> v;
            ++minus_row;
        } else if (key == "cplus") {
            std::string row;
            ls >> row;
            for (auto& v : c.cplus[plus_row]) ls >> v;
            ++plus_row;
        } else if (key == "cinf") {
            std::string row;
            ls >> row;
            for (auto& v : c.cinf[inf_row]) ls >> v;
            ++inf_row;
        }
        if (ls.fail()) throw std::runtime_error("fit_coefficients: malformed line: " + line);
    }
    if (minus_row != 6 || plus_row != 3 || inf_row != 3)
        throw std::runtime_error("fit_coefficients: wrong table shape");
    return c;
}

// ln|u| * tan(2 arctan u) with the removable singularities at |u| = 1 taken
// by their limits (-+1).
double log_tan_factor(double u) {
    const double au = std::abs(u);
    if (au == 0.0) return 0.0;
    if (std::abs(au - 1.0) < 1e-9) return (u > 0.0) ? -1.0 : 1.0;
    return std::log(au) * (2.0 * u) / (1.0 - u * u);
}

// Polynomials in varphi by descending l, as the tables are printed.
template <std::size_t L>
double poly_varphi(const std::array<double, L>& row, double varphi) {
    double acc = 0.0;
    for (double cl : row) acc = acc * varphi + cl;
    return acc;
}

} // namespace

const FitCoefficients& coefficients() {
    static const FitCoefficients c = parse(fit_data_text());
    return c;
}

std::uint64_t fit_data_hash() {
    std::uint64_t h = 1469598103934665603ull;
    for (const char* p = fit_data_text(); *p; ++p) {
        h ^= static_cast<unsigned char>(*p);
        h *= 1099511628211ull;
    }
    return h;
}

double phi_fit(const NaturalCoords& nc) {
    const double R = nc.R;
    if (R > 1.0 + 1e-12)
        throw OutOfRegion("phi_fit: defined on the oscillatory side R <= 1");
    const auto& c = coefficients();
    double radial = -std::sqrt(0.5 * pi);
    double Rk = 1.0;
    for (double ak : c.a) {
        Rk *= R;
        radial += ak * Rk;
    }
    const double ratio = c.b1 / c.b0;
    const double g =
        c.b0 * std::cbrt(std::pow(1.0 - 2.0 * nc.varphi / pi, 3) + ratio * ratio * ratio);
    const double delta_r = 8.0 * c.c0 * (nc.varphi / pi) * R * (R - 1.0);
    // The angular correction enters with a minus sign; the opposite sign
    // shifts the cos^2 nodes away from both the quadrature and the direct
    // propagation. Verified against both oracles.
    return radial - g * std::sin(pi * (R + delta_r));
}

double gamma_bar_fit(const NaturalCoords& nc) {
    const double R = nc.R;
    if (R < 0.0) throw std::invalid_argument("gamma_bar_fit: R must be >= 0");
    const auto& c = coefficients();
    if (R >= 2.0) {
        const double u = R - 1.0;
        double denom = 0.0;
        double uk = 1.0;
        for (int k = 0; k <= 2; ++k) {
            denom += poly_varphi(c.cinf[2 - k], nc.varphi) * uk;
            uk *= u;
        }
        return 1.0 / denom;
    }
    const double a0 = poly_varphi(c.a0, nc.varphi);
    const double u = R - 1.0;
    double f = 0.0;
    double uk = 1.0;
    if (R < 1.0) {
        for (int k = 0; k <= 5; ++k) {
            f += poly_varphi(c.cminus[5 - k], nc.varphi) * uk;
            uk *= u;
        }
    } else {
        for (int k = 0; k <= 2; ++k) {
            f += poly_varphi(c.cplus[2 - k], nc.varphi) * uk;
            uk *= u;
        }
    }
    return a0 + f * log_tan_factor(u);
}

} // namespace epenc::fits
