#pragma once

#include "memfract/cv_data.hpp"

namespace memfract {

/// Linear-dopant-drift memristor with an optional Joglekar window:
///   dw/dt = (mu R_on / D) i(t) f(w/D),   M(w) = R_on w/D + R_off (1 - w/D),
///   i = v / M(w),   f(x) = 1 - (2x-1)^{2p}  (f == 1 when the exponent is 0).
/// Integrated with a fixed explicit step at the sample spacing, w clamped to
/// [0, D]; first-order accurate, adequate at desk scale.
struct MemristorParams {
    double r_on = 100.0;   // ohms
    double r_off = 16e3;   // ohms
    double d = 10e-9;      // meters, film thickness
    double mu = 1e-14;     // m^2/(V s), dopant mobility
    double w0 = 5e-9;      // meters, initial state, 0 < w0 < D
    int window_exponent = 0;
};

/// Triangle sweep 0 -> +v_peak -> -v_peak -> 0 sampled uniformly in time,
/// t_k = k * step_delay. Current column is zero. samples >= 5.
CvRun triangular_sweep(double v_peak, int samples, double step_delay);

CvRun simulate_memristor(const MemristorParams& p, const CvRun& sweep);

enum class LinearKind { resistor, capacitor, inductor };

/// resistor: i = v/R; capacitor: i = C dv/dt (central differences,
/// one-sided ends); inductor: i = (1/L) integral of v (trapezoid).
CvRun simulate_linear_element(LinearKind kind, double value, const CvRun& sweep);

} // namespace memfract
