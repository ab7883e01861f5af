#pragma once

#include <cstddef>
#include <vector>

#include "memfract/cv_data.hpp"

namespace memfract {

/// Current spikes detected on top of the slow I-V trend. residual = current
/// minus a moving median (window 5% of the record); spikes are local maxima
/// of |residual| with prominence >= max(k * MAD(residual), 8% of the current
/// range) -- the floor rejects the median filter's own vertex artifacts on
/// noiseless records. Phase is the sweep direction (sign of dv/dt) at the
/// spike.
struct SpikeTrain {
    std::vector<std::size_t> indices; // strictly increasing
    std::vector<double> voltages;
    std::vector<double> currents;
    std::vector<int> phases; // +1 positive sweep, -1 negative sweep
};

SpikeTrain detect_spikes(const CvRun& run, double prominence_k = 4.0);

/// Histogram of |voltage difference| between consecutive spikes.
/// Total count = max(0, spikes - 1).
struct IntervalHistogram {
    std::vector<double> bin_edges;
    std::vector<std::size_t> counts;

    std::size_t total() const;
};

IntervalHistogram interval_histogram(const SpikeTrain& train, double bin_width);

} // namespace memfract
