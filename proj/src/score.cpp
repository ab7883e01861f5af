#include "memfract/score.hpp"

#include <algorithm>
#include <cmath>

#include "memfract/errors.hpp"

namespace memfract {
namespace {

double shoelace_area(const std::vector<double>& x, const std::vector<double>& y) {
    double a = 0.0;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        a += x[i] * y[j] - x[j] * y[i];
    }
    return 0.5 * a;
}

} // namespace

MemristanceScore memristance_degree(const CvRun& run, const ScoreConfig& cfg) {
    const auto& v = run.voltage;
    const auto& i = run.current;
    const std::size_t n = run.size();

    const auto [vmin_it, vmax_it] = std::minmax_element(v.begin(), v.end());
    const double v_pp = *vmax_it - *vmin_it;
    const double v_abs = std::max(std::abs(*vmin_it), std::abs(*vmax_it));
    if (v_abs > 0.0 &&
        (std::abs(v.front()) > 0.01 * v_abs || std::abs(v.back()) > 0.01 * v_abs))
        throw ValidationError("memristance_degree: open sweep, v must start and "
                              "end near 0");

    const auto [imin_it, imax_it] = std::minmax_element(i.begin(), i.end());
    const double i_pp = *imax_it - *imin_it;
    double i_max_abs = 0.0;
    for (double c : i) i_max_abs = std::max(i_max_abs, std::abs(c));

    MemristanceScore s;
    if (v_pp > 0.0 && i_pp > 0.0)
        s.raw_lobe_area_norm =
            std::clamp(std::abs(shoelace_area(v, i)) / (v_pp * i_pp), 0.0, 1.0);

    // |i| interpolated at interior v = 0 crossings; the loop pinches when
    // the worst crossing still carries little current.
    double worst_crossing = 0.0;
    bool crossed = false;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (v[k] == 0.0) {
            worst_crossing = std::max(worst_crossing, std::abs(i[k]));
            crossed = true;
        } else if (v[k] * v[k + 1] < 0.0) {
            const double f = v[k] / (v[k] - v[k + 1]);
            worst_crossing =
                std::max(worst_crossing, std::abs(i[k] + f * (i[k + 1] - i[k])));
            crossed = true;
        }
    }
    if (crossed && i_max_abs > 0.0)
        s.raw_pinch_closeness = std::clamp(1.0 - worst_crossing / i_max_abs, 0.0, 1.0);

    s.lobe_area_norm =
        s.raw_pinch_closeness > cfg.lobe_gate_pinch ? s.raw_lobe_area_norm : 0.0;
    s.pinch_closeness =
        s.raw_lobe_area_norm > cfg.pinch_gate_area ? s.raw_pinch_closeness : 0.0;
    s.frequency_divergence = 0.0;

    s.value = cfg.w_lobe * s.lobe_area_norm + cfg.w_pinch * s.pinch_closeness +
              cfg.w_freq * s.frequency_divergence;
    return s;
}

MemristanceScore memristance_degree(const RunSet& set, const ScoreConfig& cfg) {
    auto s = memristance_degree(average_runs(set), cfg);
    if (set.runs.size() > 1) {
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (const auto& r : set.runs) {
            double mean_abs = 0.0;
            for (double c : r.current) mean_abs += std::abs(c);
            mean_abs /= static_cast<double>(r.size());
            lo = first ? mean_abs : std::min(lo, mean_abs);
            hi = first ? mean_abs : std::max(hi, mean_abs);
            first = false;
        }
        s.frequency_divergence = hi > 0.0 ? (hi - lo) / hi : 0.0;
        s.value = cfg.w_lobe * s.lobe_area_norm + cfg.w_pinch * s.pinch_closeness +
                  cfg.w_freq * s.frequency_divergence;
    }
    return s;
}

} // namespace memfract
