#include "memfract/cv_data.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "memfract/errors.hpp"

namespace memfract {
namespace {

void validate_run(const CvRun& r) {
    if (r.time.size() != r.voltage.size() || r.time.size() != r.current.size())
        throw ValidationError("CvRun: t/v/i arrays differ in length");
    if (r.time.size() < 3)
        throw ValidationError("CvRun: too short, need at least 3 samples, got " +
                              std::to_string(r.time.size()));
    if (r.time.front() < 0.0)
        throw ValidationError("CvRun: first time sample is negative");
    for (std::size_t i = 1; i < r.time.size(); ++i)
        if (!(r.time[i] > r.time[i - 1]))
            throw ValidationError("CvRun: time not strictly increasing at sample " +
                                  std::to_string(i + 1));
    const double v_cap =
        std::max(std::abs(r.sweep_range.first), std::abs(r.sweep_range.second));
    if (v_cap > 0.0) {
        // 1% slack absorbs instrument overshoot.
        const double limit = v_cap * 1.01;
        for (std::size_t i = 0; i < r.voltage.size(); ++i)
            if (std::abs(r.voltage[i]) > limit)
                throw ValidationError("CvRun: |v| exceeds sweep range at sample " +
                                      std::to_string(i + 1));
    }
}

double parse_cell(const std::string& cell, std::size_t row, const char* name) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    while (first < last && (*first == ' ' || *first == '\t')) ++first;
    while (last > first && (*(last - 1) == ' ' || *(last - 1) == '\t')) --last;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ParseError("row " + std::to_string(row) + ": cell '" + cell +
                         "' is not numeric (column " + name + ")");
    return v;
}

} // namespace

CvRun make_cv_run(std::vector<double> time, std::vector<double> voltage,
                  std::vector<double> current,
                  std::pair<double, double> sweep_range, double step_delay,
                  std::string label) {
    CvRun r{std::move(time), std::move(voltage), std::move(current), sweep_range,
            step_delay, std::move(label)};
    validate_run(r);
    return r;
}

CvRun parse_cv_csv(std::istream& in, std::string label) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty CSV stream");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        std::string header = line;
        header.erase(std::remove_if(header.begin(), header.end(),
                                    [](char c) { return c == ' ' || c == '\t'; }),
                     header.end());
        if (header != "t,v,i")
            throw ParseError("expected header 't,v,i', got '" + line + "'");
    }

    CvRun r;
    r.label = std::move(label);
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        std::istringstream cells(line);
        std::string cell;
        std::array<double, 3> vals{};
        static constexpr const char* names[3] = {"t", "v", "i"};
        for (int c = 0; c < 3; ++c) {
            if (!std::getline(cells, cell, ','))
                throw ParseError("row " + std::to_string(row) + ": expected 3 columns");
            vals[c] = parse_cell(cell, row, names[c]);
        }
        if (std::getline(cells, cell, ','))
            throw ParseError("row " + std::to_string(row) + ": more than 3 columns");
        r.time.push_back(vals[0]);
        r.voltage.push_back(vals[1]);
        r.current.push_back(vals[2]);
    }

    if (row < 3)
        throw ValidationError("CSV too short: need at least 3 data rows, got " +
                              std::to_string(row));

    const auto [vmin, vmax] = std::minmax_element(r.voltage.begin(), r.voltage.end());
    r.sweep_range = {*vmin, *vmax};
    std::vector<double> dt(r.time.size() - 1);
    for (std::size_t i = 0; i + 1 < r.time.size(); ++i) dt[i] = r.time[i + 1] - r.time[i];
    std::nth_element(dt.begin(), dt.begin() + dt.size() / 2, dt.end());
    r.step_delay = dt[dt.size() / 2];

    validate_run(r);
    return r;
}

CvRun load_cv_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::string label = path;
    if (const auto slash = label.find_last_of('/'); slash != std::string::npos)
        label = label.substr(slash + 1);
    return parse_cv_csv(in, label);
}

void write_cv_csv(const CvRun& run, std::ostream& out) {
    out << "t,v,i\n";
    char buf[128];
    for (std::size_t i = 0; i < run.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", run.time[i],
                      run.voltage[i], run.current[i]);
        out << buf;
    }
}

RunSet make_run_set(std::vector<CvRun> runs) {
    if (runs.empty()) throw ValidationError("RunSet: no runs");
    const std::size_t n = runs.front().size();
    for (const auto& r : runs)
        if (r.size() != n)
            throw ValidationError("RunSet: runs differ in sample count (" +
                                  std::to_string(r.size()) + " vs " +
                                  std::to_string(n) + ")");
    RunSet s;
    s.t_max = 0.0;
    for (const auto& r : runs) s.t_max = std::max(s.t_max, r.time.back());
    s.runs = std::move(runs);
    return s;
}

CvRun average_runs(const RunSet& set) {
    if (set.runs.empty()) throw ValidationError("average_runs: empty RunSet");
    const std::size_t n = set.runs.front().size();
    for (const auto& r : set.runs)
        if (r.size() != n) throw ValidationError("average_runs: unequal run lengths");

    CvRun avg;
    avg.time.assign(n, 0.0);
    avg.voltage.assign(n, 0.0);
    avg.current.assign(n, 0.0);
    for (const auto& r : set.runs)
        for (std::size_t i = 0; i < n; ++i) {
            avg.time[i] += r.time[i];
            avg.voltage[i] += r.voltage[i];
            avg.current[i] += r.current[i];
        }
    const double inv = 1.0 / static_cast<double>(set.runs.size());
    for (std::size_t i = 0; i < n; ++i) {
        avg.time[i] *= inv;
        avg.voltage[i] *= inv;
        avg.current[i] *= inv;
    }
    avg.sweep_range = set.runs.front().sweep_range;
    avg.step_delay = set.runs.front().step_delay;
    avg.label = "average";
    return avg;
}

double detect_vertex(RunSet& set) {
    if (set.runs.empty()) throw ValidationError("detect_vertex: empty RunSet");
    double sum = 0.0;
    for (const auto& r : set.runs) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < r.size(); ++i)
            if (std::abs(r.voltage[i]) > std::abs(r.voltage[best])) best = i;
        if (best == 0 || best + 1 == r.size())
            throw ValidationError("detect_vertex: |v| extremum at the record "
                                  "boundary, no interior vertex");
        sum += r.time[best];
    }
    const double T = sum / static_cast<double>(set.runs.size());
    if (!(T > 0.0 && T < set.t_max))
        throw ValidationError("detect_vertex: vertex outside (0, t_max)");
    set.vertex_time = T;
    return T;
}

double Histogram2D::total() const {
    double s = 0.0;
    for (const auto& row : counts)
        for (double c : row) s += c;
    return s;
}

Histogram2D envelope_histogram(const RunSet& set, int t_bins, int i_bins) {
    if (set.runs.empty()) throw ValidationError("envelope_histogram: empty RunSet");
    if (t_bins < 1 || i_bins < 1)
        throw ValidationError("envelope_histogram: bins must be >= 1");

    double t_lo = std::numeric_limits<double>::infinity(), t_hi = -t_lo;
    double i_lo = t_lo, i_hi = -t_lo;
    for (const auto& r : set.runs)
        for (std::size_t k = 0; k < r.size(); ++k) {
            t_lo = std::min(t_lo, r.time[k]);
            t_hi = std::max(t_hi, r.time[k]);
            i_lo = std::min(i_lo, r.current[k]);
            i_hi = std::max(i_hi, r.current[k]);
        }
    // Degenerate extents get a unit-wide box so every sample still lands
    // in a bin.
    if (!(t_hi > t_lo)) { t_lo -= 0.5; t_hi += 0.5; }
    if (!(i_hi > i_lo)) { i_lo -= 0.5; i_hi += 0.5; }

    Histogram2D h;
    h.t_edges.resize(t_bins + 1);
    h.i_edges.resize(i_bins + 1);
    for (int b = 0; b <= t_bins; ++b)
        h.t_edges[b] = t_lo + (t_hi - t_lo) * b / t_bins;
    for (int b = 0; b <= i_bins; ++b)
        h.i_edges[b] = i_lo + (i_hi - i_lo) * b / i_bins;
    h.counts.assign(t_bins, std::vector<double>(i_bins, 0.0));

    const auto bin_of = [](double x, double lo, double hi, int bins) {
        int b = static_cast<int>((x - lo) / (hi - lo) * bins);
        return std::clamp(b, 0, bins - 1); // top edge closes the last bin
    };
    for (const auto& r : set.runs)
        for (std::size_t k = 0; k < r.size(); ++k) {
            const int tb = bin_of(r.time[k], t_lo, t_hi, t_bins);
            const int ib = bin_of(r.current[k], i_lo, i_hi, i_bins);
            h.counts[tb][ib] += 1.0;
        }
    return h;
}

void write_histogram_csv(const Histogram2D& h, std::ostream& out) {
    char buf[64];
    const auto put_row = [&](const char* name, const std::vector<double>& xs) {
        out << name;
        for (double x : xs) {
            std::snprintf(buf, sizeof buf, ",%.17g", x);
            out << buf;
        }
        out << "\n";
    };
    put_row("t_edges", h.t_edges);
    put_row("i_edges", h.i_edges);
    for (const auto& row : h.counts) {
        bool first = true;
        for (double c : row) {
            std::snprintf(buf, sizeof buf, first ? "%.17g" : ",%.17g", c);
            out << buf;
            first = false;
        }
        out << "\n";
    }
}

} // namespace memfract
