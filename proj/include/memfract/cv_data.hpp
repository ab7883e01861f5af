#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace memfract {

/// One cyclic-voltammetry acquisition: aligned time/voltage/current samples.
/// Invariants (enforced by make_cv_run / parse_cv_csv):
///   - the three arrays share a length >= 3
///   - time strictly increasing, first sample >= 0
///   - |voltage| never exceeds max(|sweep_range|) + 1% slack
struct CvRun {
    std::vector<double> time;    // seconds
    std::vector<double> voltage; // volts
    std::vector<double> current; // amperes
    std::pair<double, double> sweep_range{0.0, 0.0}; // volts
    double step_delay = 0.0;                          // seconds
    std::string label;

    std::size_t size() const { return time.size(); }
};

CvRun make_cv_run(std::vector<double> time, std::vector<double> voltage,
                  std::vector<double> current,
                  std::pair<double, double> sweep_range, double step_delay,
                  std::string label = {});

/// CSV with header `t,v,i`, decimal point, comma separator, LF or CRLF.
/// The sweep range is taken from the voltage extent; step delay from the
/// median sample spacing. Errors carry the offending 1-based data row.
CvRun parse_cv_csv(std::istream& in, std::string label = {});
CvRun load_cv_csv(const std::string& path);
void write_cv_csv(const CvRun& run, std::ostream& out);

/// Runs sharing sweep metadata, all of equal sample count.
struct RunSet {
    std::vector<CvRun> runs;
    std::optional<double> vertex_time; // T, set by detect_vertex
    double t_max = 0.0;
};

RunSet make_run_set(std::vector<CvRun> runs);

/// Index-wise arithmetic mean of time, voltage and current across runs.
CvRun average_runs(const RunSet& set);

/// Per-run vertex = time of max |v| (ties: earliest); T = mean across runs.
/// Stores T in the set and returns it. An extremum sitting on the record
/// boundary means there is no interior vertex and raises ValidationError.
double detect_vertex(RunSet& set);

/// 2D histogram over (t, i) with uniform bin edges over the data extent.
struct Histogram2D {
    std::vector<double> t_edges; // size t_bins + 1
    std::vector<double> i_edges; // size i_bins + 1
    std::vector<std::vector<double>> counts; // [t_bin][i_bin]

    double total() const;
};

Histogram2D envelope_histogram(const RunSet& set, int t_bins, int i_bins);
void write_histogram_csv(const Histogram2D& h, std::ostream& out);

} // namespace memfract
