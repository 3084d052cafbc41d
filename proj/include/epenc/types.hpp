// types.hpp — common aliases, tolerances, and error types

#pragma once

#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace epenc {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx iu{0.0, 1.0};

// Central tolerance knobs. EPENC_TOL scales the quadrature target; the
// remaining defaults follow from it only where noted.
struct Tolerances {
    double quad_abs = 1e-10;          // absolute tolerance per quadrature segment
    double newton_residual = 1e-12;   // |delta2| target for root polishing
    double continuation_guard = 1e-4; // keep-out radius around transition points
    double trace_drift = 1e-6;        // allowed |gamma - gamma(tp)| drift on a traced line
    double tail_convergence = 1e-6;   // agreement of tail limits at s_max vs 2 s_max
};

inline const Tolerances& tol() {
    static const Tolerances t = [] {
        Tolerances v;
        if (const char* env = std::getenv("EPENC_TOL")) {
            char* end = nullptr;
            const double q = std::strtod(env, &end);
            if (end != env && q > 0.0) v.quad_abs = q;
        }
        return v;
    }();
    return t;
}

struct ContinuationAmbiguous : std::runtime_error {
    explicit ContinuationAmbiguous(const std::string& what) : std::runtime_error(what) {}
};
struct TooCloseToTP : std::runtime_error {
    explicit TooCloseToTP(const std::string& what) : std::runtime_error(what) {}
};
struct PoleProximity : std::runtime_error {
    explicit PoleProximity(const std::string& what) : std::runtime_error(what) {}
};
struct ConvergenceFailure : std::runtime_error {
    explicit ConvergenceFailure(const std::string& what) : std::runtime_error(what) {}
};
struct NoRoot : std::runtime_error {
    explicit NoRoot(const std::string& what) : std::runtime_error(what) {}
};
struct NonConvergent : std::runtime_error {
    explicit NonConvergent(const std::string& what) : std::runtime_error(what) {}
};
struct OutOfRegion : std::runtime_error {
    explicit OutOfRegion(const std::string& what) : std::runtime_error(what) {}
};
struct DriftExceeded : std::runtime_error {
    explicit DriftExceeded(const std::string& what) : std::runtime_error(what) {}
};
struct StallNearTP : std::runtime_error {
    explicit StallNearTP(const std::string& what) : std::runtime_error(what) {}
};
struct LayoutMismatch : std::runtime_error {
    explicit LayoutMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct GridTooCoarse : std::runtime_error {
    explicit GridTooCoarse(const std::string& what) : std::runtime_error(what) {}
};
struct FitIllConditioned : std::runtime_error {
    explicit FitIllConditioned(const std::string& what) : std::runtime_error(what) {}
};

} // namespace epenc
