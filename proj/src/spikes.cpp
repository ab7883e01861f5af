#include "memfract/spikes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "memfract/errors.hpp"

namespace memfract {
namespace {

// Minimum spike prominence as a fraction of the current peak-to-peak range.
constexpr double kRelativeFloor = 0.08;

double median_inplace(std::vector<double>& v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) {
        const double lo = *std::max_element(v.begin(), v.begin() + mid);
        m = 0.5 * (lo + m);
    }
    return m;
}

std::vector<double> moving_median(const std::vector<double>& x, std::size_t window) {
    const std::size_t n = x.size();
    const std::size_t half = window / 2;
    std::vector<double> out(n);
    std::vector<double> scratch;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n, i + half + 1);
        scratch.assign(x.begin() + lo, x.begin() + hi);
        out[i] = median_inplace(scratch);
    }
    return out;
}

// Peak prominence on a non-negative series: height above the higher of the
// two valley floors reached before a taller sample (or the record edge).
double prominence(const std::vector<double>& s, std::size_t peak) {
    double left_base = s[peak];
    for (std::size_t i = peak; i-- > 0;) {
        if (s[i] > s[peak]) break;
        left_base = std::min(left_base, s[i]);
    }
    double right_base = s[peak];
    for (std::size_t i = peak + 1; i < s.size(); ++i) {
        if (s[i] > s[peak]) break;
        right_base = std::min(right_base, s[i]);
    }
    return s[peak] - std::max(left_base, right_base);
}

} // namespace

SpikeTrain detect_spikes(const CvRun& run, double prominence_k) {
    const std::size_t n = run.size();
    if (n < 21)
        throw ValidationError("detect_spikes: run too short (" + std::to_string(n) +
                              " samples, need >= 21)");
    if (!(prominence_k > 0.0))
        throw ValidationError("detect_spikes: prominence factor must be positive");

    std::size_t window = static_cast<std::size_t>(std::lround(0.05 * n));
    if (window < 3) window = 3;
    if (window % 2 == 0) ++window;

    const auto baseline = moving_median(run.current, window);
    std::vector<double> residual(n), absres(n);
    for (std::size_t i = 0; i < n; ++i) {
        residual[i] = run.current[i] - baseline[i];
        absres[i] = std::abs(residual[i]);
    }

    std::vector<double> tmp = residual;
    const double med = median_inplace(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = std::abs(residual[i] - med);
    const double mad = median_inplace(tmp);
    const double peak_abs = *std::max_element(absres.begin(), absres.end());
    const auto [imin, imax] = std::minmax_element(run.current.begin(),
                                                  run.current.end());
    // The median filter leaves kink artifacts of roughly (window/record)
    // of the current range at sweep vertices; the relative floor rejects
    // them on noiseless records while staying scale-equivariant.
    const double floor = kRelativeFloor * (*imax - *imin);
    const double threshold = std::max(prominence_k * mad, floor);

    SpikeTrain train;
    if (peak_abs == 0.0 || threshold == 0.0) return train;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(absres[i] > absres[i - 1] && absres[i] > absres[i + 1])) continue;
        if (prominence(absres, i) < threshold) continue;
        train.indices.push_back(i);
        train.voltages.push_back(run.voltage[i]);
        train.currents.push_back(run.current[i]);
        const double dv = run.voltage[i + 1] - run.voltage[i - 1];
        train.phases.push_back(dv >= 0.0 ? +1 : -1);
    }
    return train;
}

std::size_t IntervalHistogram::total() const {
    std::size_t s = 0;
    for (auto c : counts) s += c;
    return s;
}

IntervalHistogram interval_histogram(const SpikeTrain& train, double bin_width) {
    if (!(bin_width > 0.0))
        throw ValidationError("interval_histogram: bin width must be positive");

    IntervalHistogram h;
    if (train.indices.size() < 2) return h;

    std::vector<double> intervals(train.indices.size() - 1);
    double top = 0.0;
    for (std::size_t i = 0; i + 1 < train.voltages.size(); ++i) {
        intervals[i] = std::abs(train.voltages[i + 1] - train.voltages[i]);
        top = std::max(top, intervals[i]);
    }
    const auto bins = static_cast<std::size_t>(std::floor(top / bin_width)) + 1;
    h.bin_edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) h.bin_edges[b] = b * bin_width;
    h.counts.assign(bins, 0);
    for (double iv : intervals) {
        auto b = static_cast<std::size_t>(iv / bin_width);
        if (b >= bins) b = bins - 1;
        ++h.counts[b];
    }
    return h;
}

} // namespace memfract
