// equivalue.hpp — tracing of equivalue (Stokes) lines in the complex time
// plane and their closed-form asymptotics

#pragma once

#include <vector>

#include "epenc/puiseux.hpp"
#include "epenc/tpoints.hpp"

namespace epenc::equivalue {

// Angles of the (m+2) lines emanating from a TP of Puiseux order m.
std::vector<double> emanation_angles(const puiseux::PuiseuxData& pd);

enum class Terminal { RealAxisCross, ImagAsymptote, StepLimit, TPReached, RealCap };

struct EquivalueLine {
    tpoints::TransitionPoint origin;
    int n = 0;
    std::vector<cplx> points;
    std::vector<double> gamma_drift; // x * Im integral drift at each vertex
    Terminal terminal = Terminal::StepLimit;
    cplx real_axis_cross{0.0, 0.0}; // valid when the line crossed Im s = 0
    bool crossed_real_axis = false;
    int reached_tp = -1; // catalog index when terminal == TPReached
};

struct TraceOptions {
    double dl_min = 1e-3;
    double dl_max = 1e-1;
    double im_cap = 12.0;
    double re_cap = 60.0;
    int max_steps = 400000;
    int reproject_every = 10;
    bool stop_at_real_axis = true;
    double stall_radius = 5e-3;
};

// Integrates the unit-speed direction field ds/dl = +/- exp(-i arg delta)
// away from the origin TP along emanation line n, re-projecting onto the
// level set Im int delta = const.
EquivalueLine trace(const ReducedPulseParams& p,
                    const std::vector<tpoints::TransitionPoint>& catalog,
                    const tpoints::TransitionPoint& origin, int n,
                    const TraceOptions& opts = {});

// Closed-form constants c_k and the real-axis crossing points
// s_0k = alpha_bar x c_k / 2 for k >= 1.
double crossing_constant(const ReducedPulseParams& p, int k);
std::vector<double> real_axis_crossings(const ReducedPulseParams& p, int k_lo, int k_hi);

} // namespace epenc::equivalue
