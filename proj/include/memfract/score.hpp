#pragma once

#include "memfract/cv_data.hpp"

namespace memfract {

/// Knobs of the memristance score. The formula is an artifact of this
/// toolkit, not taken from any reference: components are normalized ratios
/// and the gates encode that hysteresis area only counts as memristive when
/// the loop actually pinches, and pinch quality only counts when there is a
/// loop at all.
struct ScoreConfig {
    double w_lobe = 0.5;
    double w_pinch = 0.3;
    double w_freq = 0.2;
    double lobe_gate_pinch = 0.5;  // lobe counts when raw pinch exceeds this
    double pinch_gate_area = 0.01; // pinch counts when raw lobe exceeds this
};

/// Degree of memristance on [0,1]: 0 a pure resistor, 1 an ideal memristor.
/// value is the weighted mean of the (gated) components.
struct MemristanceScore {
    double value = 0.0;
    double lobe_area_norm = 0.0;       // gated components
    double pinch_closeness = 0.0;
    double frequency_divergence = 0.0;
    double raw_lobe_area_norm = 0.0;   // pre-gate ratios
    double raw_pinch_closeness = 0.0;
};

/// Single-run score; frequency_divergence defaults to 0.
/// Requires a closed sweep (v starts and ends near 0).
MemristanceScore memristance_degree(const CvRun& run, const ScoreConfig& cfg = {});

/// Multi-run variant: frequency_divergence is the normalized spread of mean
/// |i| across runs; the remaining components come from the averaged run.
MemristanceScore memristance_degree(const RunSet& set, const ScoreConfig& cfg = {});

} // namespace memfract
