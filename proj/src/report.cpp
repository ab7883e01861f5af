#include "memfract/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "memfract/errors.hpp"
#include "memfract/parallel.hpp"
#include "memfract/svg.hpp"

namespace memfract {
namespace {

nlohmann::ordered_json stats_json(const FitStats& s) {
    return {{"sse", s.sse}, {"ssr", s.ssr}, {"sst", s.sst}, {"r2", s.r2}};
}

nlohmann::ordered_json model_json(const AnyModel& m) {
    return std::visit([](const auto& x) { return x.to_json(); }, m);
}

} // namespace

void AnalysisConfig::validate() const {
    if (degree < 1 || degree > 40)
        throw ValidationError("config: degree must lie in [1, 40]");
    if (!(alpha_step > 0.0) || alpha_step > 0.1)
        throw ValidationError("config: alpha_step must lie in (0, 0.1]");
    if (grid_points < 101)
        throw ValidationError("config: grid_points must be >= 101");
    if (!(singular_delta > 0.0))
        throw ValidationError("config: singular_delta must be positive");
    if (!(spike_k > 0.0))
        throw ValidationError("config: spike_k must be positive");
}

void AnalysisConfig::apply_json(const nlohmann::json& j) {
    if (j.contains("degree")) degree = j.at("degree").get<int>();
    if (j.contains("piecewise")) piecewise = j.at("piecewise").get<bool>();
    if (j.contains("alpha_step")) alpha_step = j.at("alpha_step").get<double>();
    if (j.contains("grid_points")) grid_points = j.at("grid_points").get<int>();
    if (j.contains("singular_delta"))
        singular_delta = j.at("singular_delta").get<double>();
    if (j.contains("spike_k")) spike_k = j.at("spike_k").get<double>();
    if (j.contains("lattice_file"))
        lattice_file = j.at("lattice_file").get<std::string>();
    if (j.contains("output_dir")) output_dir = j.at("output_dir").get<std::string>();
}

nlohmann::ordered_json AnalysisConfig::to_json() const {
    return {{"degree", degree},
            {"piecewise", piecewise},
            {"alpha_step", alpha_step},
            {"grid_points", grid_points},
            {"singular_delta", singular_delta},
            {"spike_k", spike_k},
            {"lattice_file", lattice_file},
            {"output_dir", output_dir}};
}

AnalysisReport analyze(const CvRun& run, const AnalysisConfig& cfg,
                       const Lattice& lattice) {
    cfg.validate();

    AnalysisReport rep;
    rep.input_label = run.label;
    rep.input_samples = run.size();
    rep.sweep_range = run.sweep_range;
    rep.step_delay = run.step_delay;
    rep.config = cfg;

    if (cfg.piecewise) {
        RunSet set = make_run_set({run});
        rep.vertex_time = detect_vertex(set);
        auto [vm, vs] = fit_piecewise(run.time, run.voltage, *rep.vertex_time,
                                      cfg.degree);
        auto [im, is] = fit_piecewise(run.time, run.current, *rep.vertex_time,
                                      cfg.degree);
        rep.v_model = std::move(vm);
        rep.i_model = std::move(im);
        rep.v_stats = vs.first;
        rep.v_stats2 = vs.second;
        rep.i_stats = is.first;
        rep.i_stats2 = is.second;
    } else {
        auto [vm, vs] = fit_poly(run.time, run.voltage, cfg.degree);
        auto [im, is] = fit_poly(run.time, run.current, cfg.degree);
        rep.v_model = std::move(vm);
        rep.i_model = std::move(im);
        rep.v_stats = vs;
        rep.i_stats = is;
    }

    rep.reconstruction = reconstruct_compare(rep.v_model, rep.i_model, run);

    OptimizeOptions opts;
    opts.alpha_step = cfg.alpha_step;
    opts.grid_points = cfg.grid_points;
    opts.delta_rel = cfg.singular_delta;
    rep.admissible = admissible_couples(rep.v_model, rep.i_model, cfg.alpha_step);
    rep.optimum = optimize_orders(rep.v_model, rep.i_model, opts);

    rep.curve = memfractance(rep.v_model, rep.i_model, rep.optimum.orders,
                             evaluation_grid(rep.v_model, rep.i_model,
                                             cfg.grid_points),
                             cfg.singular_delta);

    // Zero locus and coarse range map views (t*(alpha2) scatter, heatmap).
    const double t_lo = std::max(model_domain_lo(rep.v_model),
                                 model_domain_lo(rep.i_model));
    const double t_hi = std::min(model_domain_hi(rep.v_model),
                                 model_domain_hi(rep.i_model));
    const int locus_n = 41;
    rep.denominator_loci.resize(locus_n);
    parallel_for(locus_n, [&](std::size_t k) {
        rep.denominator_loci[k] = denominator_zeros(
            rep.i_model, 2.0 * static_cast<double>(k) / (locus_n - 1),
            {t_lo, t_hi});
    });

    const int map_n = 41;
    rep.map_alpha1.resize(map_n);
    rep.map_alpha2.resize(map_n);
    for (int k = 0; k < map_n; ++k)
        rep.map_alpha1[k] = rep.map_alpha2[k] = 2.0 * k / (map_n - 1);
    const auto grid = evaluation_grid(rep.v_model, rep.i_model, 501);
    std::vector<std::vector<double>> nrows(map_n), drows(map_n);
    parallel_for(map_n, [&](std::size_t k) {
        nrows[k].resize(grid.size());
        drows[k].resize(grid.size());
        RlOfAntiderivative(rep.v_model, rep.map_alpha1[k]).eval(grid, nrows[k]);
        RlOfAntiderivative(rep.i_model, rep.map_alpha2[k]).eval(grid, drows[k]);
    });
    rep.map_range.assign(map_n, std::vector<double>(map_n, 0.0));
    parallel_for(map_n, [&](std::size_t i1) {
        for (int i2 = 0; i2 < map_n; ++i2) {
            double dmax = 0.0;
            for (double d : drows[i2]) dmax = std::max(dmax, std::abs(d));
            const double delta = cfg.singular_delta * dmax;
            double mn = 0, mx = 0;
            bool any = false;
            for (std::size_t g = 0; g < grid.size(); ++g) {
                const double d = drows[i2][g];
                if (std::abs(d) < delta || d == 0.0) continue;
                const double f = nrows[i1][g] / d;
                mn = any ? std::min(mn, f) : f;
                mx = any ? std::max(mx, f) : f;
                any = true;
            }
            rep.map_range[i1][i2] =
                any ? mx - mn : std::numeric_limits<double>::quiet_NaN();
        }
    });

    rep.classification = classify(rep.optimum.orders, lattice);

    try {
        rep.score = memristance_degree(run);
    } catch (const ValidationError& e) {
        rep.score_note = e.what();
    }
    try {
        rep.spikes = detect_spikes(run, cfg.spike_k);
        const double v_span = rep.sweep_range.second - rep.sweep_range.first;
        rep.spike_hist = interval_histogram(
            *rep.spikes, v_span > 0.0 ? v_span / 50.0 : 0.02);
    } catch (const ValidationError& e) {
        rep.spike_note = e.what();
    }

    return rep;
}

nlohmann::ordered_json AnalysisReport::to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = "memfract";
    j["input"] = {{"label", input_label},
                  {"samples", input_samples},
                  {"sweep_range", {sweep_range.first, sweep_range.second}},
                  {"step_delay", step_delay}};
    j["config"] = config.to_json();
    j["vertex_time"] = vertex_time ? nlohmann::ordered_json(*vertex_time)
                                   : nlohmann::ordered_json(nullptr);

    nlohmann::ordered_json fits;
    fits["voltage"] = {{"model", model_json(v_model)}, {"stats", stats_json(v_stats)}};
    if (v_stats2) fits["voltage"]["stats_piece2"] = stats_json(*v_stats2);
    fits["current"] = {{"model", model_json(i_model)}, {"stats", stats_json(i_stats)}};
    if (i_stats2) fits["current"]["stats_piece2"] = stats_json(*i_stats2);
    j["fits"] = std::move(fits);

    j["reconstruction"] = {{"v_stats", stats_json(reconstruction.v_stats)},
                           {"i_stats", stats_json(reconstruction.i_stats)},
                           {"series",
                            {{"t", reconstruction.t},
                             {"v", reconstruction.v},
                             {"v_hat", reconstruction.v_hat},
                             {"i", reconstruction.i},
                             {"i_hat", reconstruction.i_hat}}}};

    nlohmann::ordered_json adm = nlohmann::ordered_json::array();
    for (const auto& [a1, a2] : admissible) adm.push_back({a1, a2});
    j["admissible_couples"] = std::move(adm);

    j["optimum"] = {{"alpha1", optimum.orders.alpha1},
                    {"alpha2", optimum.orders.alpha2},
                    {"m1", optimum.orders.m1},
                    {"m2", optimum.orders.m2},
                    {"range", optimum.range},
                    {"relative_range", optimum.relative_range},
                    {"flat_degenerate", optimum.flat_degenerate},
                    {"admissible_count", optimum.admissible_count}};

    j["memfractance"] = {{"t", curve.t_grid},
                         {"values", curve.values},
                         {"singular_points", curve.singular_points},
                         {"range", curve.range_value},
                         {"median", curve.median_value}};

    nlohmann::ordered_json loci = nlohmann::ordered_json::array();
    for (const auto& l : denominator_loci)
        loci.push_back({{"alpha2", l.parameter}, {"zeros", l.zeros}});
    j["denominator_zeros"] = std::move(loci);

    j["range_map"] = {{"alpha1", map_alpha1},
                      {"alpha2", map_alpha2},
                      {"range", map_range}};

    nlohmann::ordered_json nearest = nlohmann::ordered_json::array();
    for (const auto& [label, dist] : classification.nearest)
        nearest.push_back({{"label", label}, {"distance", dist}});
    j["classification"] = {
        {"triangle", classification.triangle_name},
        {"elements", classification.triangle_labels},
        {"vertices",
         {{classification.triangle_vertices[0].first,
           classification.triangle_vertices[0].second},
          {classification.triangle_vertices[1].first,
           classification.triangle_vertices[1].second},
          {classification.triangle_vertices[2].first,
           classification.triangle_vertices[2].second}}},
        {"nearest", std::move(nearest)}};

    if (score)
        j["score"] = {{"value", score->value},
                      {"lobe_area_norm", score->lobe_area_norm},
                      {"pinch_closeness", score->pinch_closeness},
                      {"frequency_divergence", score->frequency_divergence},
                      {"raw_lobe_area_norm", score->raw_lobe_area_norm},
                      {"raw_pinch_closeness", score->raw_pinch_closeness}};
    else
        j["score"] = {{"error", score_note}};

    if (spikes) {
        nlohmann::ordered_json sp;
        sp["count"] = spikes->indices.size();
        sp["indices"] = spikes->indices;
        sp["v"] = spikes->voltages;
        sp["i"] = spikes->currents;
        sp["phases"] = spikes->phases;
        if (spike_hist)
            sp["interval_histogram"] = {{"edges", spike_hist->bin_edges},
                                        {"counts", spike_hist->counts}};
        j["spikes"] = std::move(sp);
    } else {
        j["spikes"] = {{"error", spike_note}};
    }
    return j;
}

void write_report_svgs(const AnalysisReport& rep, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const auto save = [&](const std::string& name, const std::string& body) {
        std::ofstream out(fs::path(dir) / name);
        out << body;
    };

    {
        SvgChart c("voltage fit: " + rep.input_label, "t [s]", "v [V]");
        c.add_points(rep.reconstruction.t, rep.reconstruction.v, "#888", "data", 1.6);
        c.add_line(rep.reconstruction.t, rep.reconstruction.v_hat, "#c23", "model");
        if (rep.vertex_time) c.add_vline(*rep.vertex_time, "#777");
        save("fit_voltage.svg", c.render());
    }
    {
        SvgChart c("current fit: " + rep.input_label, "t [s]", "i [A]");
        c.add_points(rep.reconstruction.t, rep.reconstruction.i, "#888", "data", 1.6);
        c.add_line(rep.reconstruction.t, rep.reconstruction.i_hat, "#27c", "model");
        if (rep.vertex_time) c.add_vline(*rep.vertex_time, "#777");
        save("fit_current.svg", c.render());
    }
    {
        char sub[96];
        std::snprintf(sub, sizeof sub, "memfractance (a1=%.9g, a2=%.9g)",
                      rep.optimum.orders.alpha1, rep.optimum.orders.alpha2);
        SvgChart c(sub, "t [s]", "F_M");
        c.add_line(rep.curve.t_grid, rep.curve.values, "#283");
        for (double s : rep.curve.singular_points) c.add_vline(s, "#c23");
        save("memfractance.svg", c.render());
    }
    {
        SvgChart c("denominator zeros", "alpha2", "t* [s]");
        std::vector<double> xs, ys;
        for (const auto& l : rep.denominator_loci)
            for (double z : l.zeros) {
                xs.push_back(l.parameter);
                ys.push_back(z);
            }
        c.add_points(xs, ys, "#c23", "t*(alpha2)");
        save("denominator_zeros.svg", c.render());
    }
    save("range_map.svg",
         svg_heatmap(rep.map_alpha1, rep.map_alpha2, rep.map_range,
                     "range of F_M over [0,2]^2 (log scale)", "alpha1", "alpha2"));
    if (rep.spikes && rep.spike_hist && !rep.spike_hist->counts.empty())
        save("spikes.svg",
             svg_bars(rep.spike_hist->bin_edges, rep.spike_hist->counts,
                      "inter-spike voltage intervals", "|dv| [V]", "count"));
}

} // namespace memfract
