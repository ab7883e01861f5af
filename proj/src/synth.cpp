#include "memfract/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "memfract/errors.hpp"

namespace memfract {

CvRun triangular_sweep(double v_peak, int samples, double step_delay) {
    if (samples < 5)
        throw ValidationError("triangular_sweep: need at least 5 samples, got " +
                              std::to_string(samples));
    if (!(v_peak > 0.0)) throw ValidationError("triangular_sweep: v_peak must be positive");
    if (!(step_delay > 0.0))
        throw ValidationError("triangular_sweep: step_delay must be positive");

    CvRun r;
    r.time.resize(samples);
    r.voltage.resize(samples);
    r.current.assign(samples, 0.0);
    const double last = static_cast<double>(samples - 1);
    for (int k = 0; k < samples; ++k) {
        r.time[k] = k * step_delay;
        const double q = k / last; // sweep phase in [0, 1]
        double v;
        if (q <= 0.25)
            v = 4.0 * q * v_peak;
        else if (q <= 0.75)
            v = (2.0 - 4.0 * q) * v_peak;
        else
            v = (4.0 * q - 4.0) * v_peak;
        r.voltage[k] = v;
    }
    r.sweep_range = {-v_peak, v_peak};
    r.step_delay = step_delay;
    r.label = "sweep";
    return r;
}

CvRun simulate_memristor(const MemristorParams& p, const CvRun& sweep) {
    if (!(p.r_on > 0.0) || !(p.r_on <= p.r_off))
        throw ValidationError("simulate_memristor: need 0 < R_on <= R_off");
    if (!(p.d > 0.0) || !(p.w0 > 0.0) || !(p.w0 < p.d))
        throw ValidationError("simulate_memristor: need 0 < w0 < D");
    if (p.window_exponent < 0)
        throw ValidationError("simulate_memristor: window exponent must be >= 0");

    CvRun out = sweep;
    out.label = "memristor";
    const double k_drift = p.mu * p.r_on / p.d;
    double w = p.w0;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const double x = w / p.d;
        const double m = p.r_on * x + p.r_off * (1.0 - x);
        const double cur = sweep.voltage[i] / m;
        out.current[i] = cur;
        if (i + 1 < sweep.size()) {
            double window = 1.0;
            if (p.window_exponent > 0)
                window = 1.0 - std::pow(2.0 * x - 1.0, 2.0 * p.window_exponent);
            const double dt = sweep.time[i + 1] - sweep.time[i];
            w = std::clamp(w + dt * k_drift * cur * window, 0.0, p.d);
        }
    }
    return out;
}

CvRun simulate_linear_element(LinearKind kind, double value, const CvRun& sweep) {
    if (!(value > 0.0))
        throw ValidationError("simulate_linear_element: element value must be positive");

    CvRun out = sweep;
    const std::size_t n = sweep.size();
    switch (kind) {
    case LinearKind::resistor:
        out.label = "resistor";
        for (std::size_t i = 0; i < n; ++i) out.current[i] = sweep.voltage[i] / value;
        break;
    case LinearKind::capacitor: {
        out.label = "capacitor";
        const auto& t = sweep.time;
        const auto& v = sweep.voltage;
        out.current[0] = value * (v[1] - v[0]) / (t[1] - t[0]);
        for (std::size_t i = 1; i + 1 < n; ++i)
            out.current[i] = value * (v[i + 1] - v[i - 1]) / (t[i + 1] - t[i - 1]);
        out.current[n - 1] = value * (v[n - 1] - v[n - 2]) / (t[n - 1] - t[n - 2]);
        break;
    }
    case LinearKind::inductor: {
        out.label = "inductor";
        double acc = 0.0;
        out.current[0] = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            acc += 0.5 * (sweep.voltage[i] + sweep.voltage[i - 1]) *
                   (sweep.time[i] - sweep.time[i - 1]);
            out.current[i] = acc / value;
        }
        break;
    }
    default:
        throw ValidationError("simulate_linear_element: unknown element kind");
    }
    return out;
}

} // namespace memfract
