#pragma once

#include <optional>
#include <string>

#include "memfract/memfractance.hpp"
#include "memfract/score.hpp"
#include "memfract/spikes.hpp"

namespace memfract {

/// Pipeline configuration. Precedence at the CLI: flags > config file >
/// these defaults.
struct AnalysisConfig {
    int degree = 10;
    bool piecewise = false;
    double alpha_step = 0.01;
    int grid_points = 2001;
    double singular_delta = 1e-9;
    double spike_k = 4.0;
    std::string lattice_file; // empty = builtin lattice
    std::string output_dir = ".";

    void validate() const; // degree in [1,40], alpha_step in (0,0.1], grid >= 101
    void apply_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;
};

/// Everything cmd_analyze computes. The JSON document is the canonical
/// output; every SVG is re-derived from fields present here.
struct AnalysisReport {
    std::string input_label;
    std::size_t input_samples = 0;
    std::pair<double, double> sweep_range{0, 0};
    double step_delay = 0;
    AnalysisConfig config;

    std::optional<double> vertex_time;
    AnyModel v_model, i_model;
    FitStats v_stats, i_stats;              // single fit, or piece 1
    std::optional<FitStats> v_stats2, i_stats2; // piece 2
    ReconstructResult reconstruction;

    std::vector<std::pair<double, double>> admissible;
    OptimizeResult optimum;
    MemfractanceCurve curve;
    std::vector<ZeroLocus> denominator_loci;

    // Coarse range map over [0,2]^2 for the heatmap view.
    std::vector<double> map_alpha1, map_alpha2;
    std::vector<std::vector<double>> map_range; // [a1 index][a2 index]

    ClassificationResult classification;

    std::optional<MemristanceScore> score;
    std::string score_note;
    std::optional<SpikeTrain> spikes;
    std::optional<IntervalHistogram> spike_hist;
    std::string spike_note;

    nlohmann::ordered_json to_json() const;
};

AnalysisReport analyze(const CvRun& run, const AnalysisConfig& cfg,
                       const Lattice& lattice = Lattice::builtin());

/// Writes fit_voltage/fit_current/memfractance/denominator_zeros/range_map
/// (and spikes, when present) SVGs under dir.
void write_report_svgs(const AnalysisReport& rep, const std::string& dir);

} // namespace memfract
