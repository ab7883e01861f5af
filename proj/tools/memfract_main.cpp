// memfract CLI: fit / analyze / synth / spikes over cyclic-voltammetry CSVs.
// Exit codes: 0 ok, 2 input error, 3 analysis degenerate, 4 internal.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "memfract/errors.hpp"
#include "memfract/kernels.hpp"
#include "memfract/report.hpp"
#include "memfract/svg.hpp"
#include "memfract/synth.hpp"

namespace fs = std::filesystem;
using namespace memfract;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitInternal = 4;

struct CliConfig {
    AnalysisConfig cfg;
    std::string config_file;
};

void add_config_flags(CLI::App* cmd, CliConfig& c) {
    cmd->add_option("--config", c.config_file, "JSON config file");
    cmd->add_option("--degree", c.cfg.degree, "polynomial degree [1,40]");
    cmd->add_flag("--piecewise", c.cfg.piecewise,
                  "2-piecewise fit split at the detected vertex");
    cmd->add_option("--alpha-step", c.cfg.alpha_step, "order grid step (0,0.1]");
    cmd->add_option("--grid-points", c.cfg.grid_points,
                    "evaluation grid size (>= 101)");
    cmd->add_option("--singular-delta", c.cfg.singular_delta,
                    "relative singularity threshold");
    cmd->add_option("--spike-k", c.cfg.spike_k, "spike prominence factor");
    cmd->add_option("--lattice", c.cfg.lattice_file, "classification lattice JSON");
    cmd->add_option("-o,--out-dir", c.cfg.output_dir, "output directory");
}

// flags > config file > defaults
void finalize_config(CLI::App* cmd, CliConfig& c) {
    if (c.config_file.empty()) return;
    std::ifstream in(c.config_file);
    if (!in) throw ParseError("cannot open config file: " + c.config_file);
    nlohmann::json j;
    in >> j;
    AnalysisConfig from_file;
    from_file.apply_json(j);
    const auto keep_flag = [&](const std::string& name) {
        return cmd->count(name) > 0;
    };
    if (!keep_flag("--degree")) c.cfg.degree = from_file.degree;
    if (!keep_flag("--piecewise")) c.cfg.piecewise = from_file.piecewise;
    if (!keep_flag("--alpha-step")) c.cfg.alpha_step = from_file.alpha_step;
    if (!keep_flag("--grid-points")) c.cfg.grid_points = from_file.grid_points;
    if (!keep_flag("--singular-delta"))
        c.cfg.singular_delta = from_file.singular_delta;
    if (!keep_flag("--spike-k")) c.cfg.spike_k = from_file.spike_k;
    if (!keep_flag("--lattice")) c.cfg.lattice_file = from_file.lattice_file;
    if (!keep_flag("--out-dir")) c.cfg.output_dir = from_file.output_dir;
}

void write_text(const fs::path& path, const std::string& body) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path.string());
    out << body;
}

int run_fit(const std::string& input, CliConfig& c, CLI::App* cmd) {
    finalize_config(cmd, c);
    c.cfg.validate();
    const CvRun run = load_cv_csv(input);

    nlohmann::ordered_json out;
    out["input"] = run.label;
    if (c.cfg.piecewise) {
        RunSet set = make_run_set({run});
        const double T = detect_vertex(set);
        auto [vm, vs] = fit_piecewise(run.time, run.voltage, T, c.cfg.degree);
        auto [im, is] = fit_piecewise(run.time, run.current, T, c.cfg.degree);
        out["vertex_time"] = T;
        out["voltage"] = {{"model", vm.to_json()},
                          {"stats",
                           {{"piece1",
                             {{"sse", vs.first.sse}, {"ssr", vs.first.ssr},
                              {"sst", vs.first.sst}, {"r2", vs.first.r2}}},
                            {"piece2",
                             {{"sse", vs.second.sse}, {"ssr", vs.second.ssr},
                              {"sst", vs.second.sst}, {"r2", vs.second.r2}}}}}};
        out["current"] = {{"model", im.to_json()},
                          {"stats",
                           {{"piece1",
                             {{"sse", is.first.sse}, {"ssr", is.first.ssr},
                              {"sst", is.first.sst}, {"r2", is.first.r2}}},
                            {"piece2",
                             {{"sse", is.second.sse}, {"ssr", is.second.ssr},
                              {"sst", is.second.sst}, {"r2", is.second.r2}}}}}};
    } else {
        auto [vm, vs] = fit_poly(run.time, run.voltage, c.cfg.degree);
        auto [im, is] = fit_poly(run.time, run.current, c.cfg.degree);
        out["voltage"] = {{"model", vm.to_json()},
                          {"stats",
                           {{"sse", vs.sse}, {"ssr", vs.ssr},
                            {"sst", vs.sst}, {"r2", vs.r2}}}};
        out["current"] = {{"model", im.to_json()},
                          {"stats",
                           {{"sse", is.sse}, {"ssr", is.ssr},
                            {"sst", is.sst}, {"r2", is.r2}}}};
        std::cerr << "fit: voltage R2 = " << vs.r2 << ", current R2 = " << is.r2
                  << "\n";
    }
    write_text(fs::path(c.cfg.output_dir) / "model.json", out.dump(2) + "\n");
    return kExitOk;
}

int run_analyze(const std::string& input, CliConfig& c, CLI::App* cmd) {
    finalize_config(cmd, c);
    c.cfg.validate();
    const CvRun run = load_cv_csv(input);
    const Lattice lattice = c.cfg.lattice_file.empty()
                                ? Lattice::builtin()
                                : Lattice::load(c.cfg.lattice_file);
    const AnalysisReport rep = analyze(run, c.cfg, lattice);
    write_text(fs::path(c.cfg.output_dir) / "report.json",
               rep.to_json().dump(2) + "\n");
    write_report_svgs(rep, c.cfg.output_dir);
    std::cerr << "analyze: optimum (alpha1, alpha2) = ("
              << rep.optimum.orders.alpha1 << ", " << rep.optimum.orders.alpha2
              << "), range = " << rep.optimum.range << ", triangle "
              << rep.classification.triangle_name << ", kernels "
              << kernels::active().name << "\n";
    return kExitOk;
}

int run_spikes(const std::string& input, double k, double bin_width,
               const std::string& out_dir) {
    const CvRun run = load_cv_csv(input);
    const SpikeTrain train = detect_spikes(run, k);
    double width = bin_width;
    if (!(width > 0.0)) {
        const double span = run.sweep_range.second - run.sweep_range.first;
        width = span > 0.0 ? span / 50.0 : 0.02;
    }
    const IntervalHistogram hist = interval_histogram(train, width);

    fs::create_directories(out_dir);
    {
        std::ofstream out(fs::path(out_dir) / "spikes.csv", std::ios::binary);
        out << "index,t,v,i,phase\n";
        for (std::size_t s = 0; s < train.indices.size(); ++s)
            out << train.indices[s] << "," << run.time[train.indices[s]] << ","
                << train.voltages[s] << "," << train.currents[s] << ","
                << (train.phases[s] > 0 ? "positive-sweep" : "negative-sweep")
                << "\n";
    }
    {
        std::ofstream out(fs::path(out_dir) / "spike_intervals.csv",
                          std::ios::binary);
        out << "bin_lo,bin_hi,count\n";
        for (std::size_t b = 0; b < hist.counts.size(); ++b)
            out << hist.bin_edges[b] << "," << hist.bin_edges[b + 1] << ","
                << hist.counts[b] << "\n";
    }
    if (!hist.counts.empty())
        write_text(fs::path(out_dir) / "spikes.svg",
                   svg_bars(hist.bin_edges, hist.counts,
                            "inter-spike voltage intervals", "|dv| [V]", "count"));
    std::cerr << "spikes: " << train.indices.size() << " detected\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mem-fractance analysis of cyclic-voltammetry data"};
    app.require_subcommand(1);

    // fit
    CliConfig fit_cfg;
    std::string fit_input;
    auto* fit = app.add_subcommand("fit", "fit v(t), i(t) polynomials");
    fit->add_option("input", fit_input, "CSV file (t,v,i)")->required();
    add_config_flags(fit, fit_cfg);

    // analyze
    CliConfig an_cfg;
    std::string an_input;
    auto* an = app.add_subcommand("analyze", "full memfractance pipeline");
    an->add_option("input", an_input, "CSV file (t,v,i)")->required();
    add_config_flags(an, an_cfg);

    // synth
    std::string synth_kind, synth_out;
    double vpp = 1.0, delay = 0.1, r_value = 1000.0, c_value = 1e-6,
           l_value = 1.0;
    int samples = 401;
    MemristorParams mp;
    auto* synth = app.add_subcommand("synth", "generate synthetic sweeps");
    synth->add_option("kind", synth_kind,
                      "memristor|resistor|capacitor|inductor|sweep")
        ->required();
    synth->add_option("--vpp", vpp, "sweep peak voltage [V]");
    synth->add_option("--n,--samples", samples, "sample count");
    synth->add_option("--delay", delay, "step delay [s]");
    synth->add_option("--r", r_value, "resistance [ohm]");
    synth->add_option("--c", c_value, "capacitance [F]");
    synth->add_option("--l", l_value, "inductance [H]");
    synth->add_option("--r-on", mp.r_on, "memristor R_on [ohm]");
    synth->add_option("--r-off", mp.r_off, "memristor R_off [ohm]");
    synth->add_option("--thickness", mp.d, "film thickness [m]");
    synth->add_option("--mu", mp.mu, "dopant mobility [m^2/Vs]");
    synth->add_option("--w0", mp.w0, "initial state [m]");
    synth->add_option("--window", mp.window_exponent, "Joglekar window exponent");
    synth->add_option("-o,--output", synth_out, "output CSV (default stdout)");

    // spikes
    std::string sp_input, sp_out = ".";
    double sp_k = 4.0, sp_bin = 0.0;
    auto* sp = app.add_subcommand("spikes", "spike detection and histogram");
    sp->add_option("input", sp_input, "CSV file (t,v,i)")->required();
    sp->add_option("--k", sp_k, "prominence factor");
    sp->add_option("--bin-width", sp_bin, "histogram bin width [V]");
    sp->add_option("-o,--out-dir", sp_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*fit) return run_fit(fit_input, fit_cfg, fit);
        if (*an) return run_analyze(an_input, an_cfg, an);
        if (*sp) return run_spikes(sp_input, sp_k, sp_bin, sp_out);
        if (*synth) {
            const CvRun sweep = triangular_sweep(vpp, samples, delay);
            CvRun out;
            if (synth_kind == "sweep") out = sweep;
            else if (synth_kind == "memristor") out = simulate_memristor(mp, sweep);
            else if (synth_kind == "resistor")
                out = simulate_linear_element(LinearKind::resistor, r_value, sweep);
            else if (synth_kind == "capacitor")
                out = simulate_linear_element(LinearKind::capacitor, c_value, sweep);
            else if (synth_kind == "inductor")
                out = simulate_linear_element(LinearKind::inductor, l_value, sweep);
            else
                throw ValidationError("unknown synth kind: " + synth_kind);
            if (synth_out.empty()) {
                write_cv_csv(out, std::cout);
            } else {
                std::ofstream f(synth_out, std::ios::binary);
                if (!f) throw ParseError("cannot write file: " + synth_out);
                write_cv_csv(out, f);
            }
            return kExitOk;
        }
    } catch (const NoSolutionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const FitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
