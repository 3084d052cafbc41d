// fits.hpp — closed-form surfaces for phi/x and gamma_bar/x in the natural
// coordinates of the pulse parameter plane

#pragma once

#include <array>
#include <cstdint>

#include "epenc/params.hpp"
#include "epenc/types.hpp"

namespace epenc::fits {

struct NaturalCoords {
    double X = 0.0;      // 1/x
    double Y = 0.0;      // alpha_bar / (2 sqrt(e))
    double varphi = 0.0; // arctan(X/Y), radians
    double eta = 0.0;    // coalescence root, decreasing with varphi
    double R = 0.0;      // separator radius; R = 1 on the separator
};

NaturalCoords natural_coords(const ReducedPulseParams& p);

struct FitCoefficients {
    std::array<double, 4> a{};      // a1..a4
    double b0 = 0.0, b1 = 0.0;
    double c0 = 0.0;
    std::array<double, 3> a0{};     // varphi^2, varphi, 1
    // rows by descending k as printed; columns by descending l
    std::array<std::array<double, 3>, 6> cminus{};
    std::array<std::array<double, 4>, 3> cplus{};
    std::array<std::array<double, 3>, 3> cinf{};
};

const FitCoefficients& coefficients();

// Raw text of the coefficient table (identical to data/fit_coefficients.txt)
// and an FNV-1a hash of it for transcription pinning.
const char* fit_data_text();
std::uint64_t fit_data_hash();

// phi/x on the oscillatory side (R <= 1); throws OutOfRegion beyond it.
double phi_fit(const NaturalCoords& nc);

// gamma_bar/x, piecewise over 0 <= R < 1, 1 <= R < 2, and R >= 2.
double gamma_bar_fit(const NaturalCoords& nc);

} // namespace epenc::fits
