#include "memfract/memfractance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "memfract/errors.hpp"
#include "memfract/kernels.hpp"
#include "memfract/parallel.hpp"

namespace memfract {
namespace {

std::vector<double> antiderivative_raw(const std::vector<double>& raw) {
    std::vector<double> r(raw.size() + 1, 0.0);
    for (std::size_t j = 0; j < raw.size(); ++j)
        r[j + 1] = raw[j] / static_cast<double>(j + 1);
    return r;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) {
        const double lo = *std::max_element(v.begin(), v.begin() + mid);
        m = 0.5 * (lo + m);
    }
    return m;
}

} // namespace

double model_domain_lo(const AnyModel& m) {
    return std::visit([](const auto& x) { return x.domain_lo(); }, m);
}

double model_domain_hi(const AnyModel& m) {
    return std::visit([](const auto& x) { return x.domain_hi(); }, m);
}

void model_eval_grid(const AnyModel& m, std::span<const double> t,
                     std::span<double> out) {
    if (const auto* p = std::get_if<PolyModel>(&m)) {
        p->eval_grid(t, out);
        return;
    }
    const auto& pw = std::get<PiecewisePolyModel>(m);
    for (std::size_t i = 0; i < t.size(); ++i)
        out[i] = pw(t[i]);
}

RlOfAntiderivative::RlOfAntiderivative(const AnyModel& model, double alpha)
    : alpha_(alpha) {
    if (const auto* p = std::get_if<PolyModel>(&model)) {
        w_ = rl_weights(antiderivative_raw(p->raw_coefficients()), alpha);
        return;
    }
    const auto& pw = std::get<PiecewisePolyModel>(model);
    piecewise_ = true;
    vertex_ = pw.vertex;
    guard_ = vertex_guard(pw.domain_hi());
    const auto f1 = antiderivative_raw(pw.piece1.raw_coefficients());
    const auto f2 = antiderivative_raw(pw.piece2.raw_coefficients());
    w_ = rl_weights(f1, alpha);
    g_ = rl_memory_weights(f1, f2, vertex_, alpha);
}

double RlOfAntiderivative::operator()(double t) const {
    double out;
    eval(std::span<const double>(&t, 1), std::span<double>(&out, 1));
    return out;
}

void RlOfAntiderivative::eval(std::span<const double> t,
                              std::span<double> out) const {
    const auto& k = kernels::active();
    for (double ti : t) {
        if (!(ti > 0.0))
            throw DomainError("RL evaluation requires t > 0");
        if (piecewise_ && std::abs(ti - vertex_) < guard_)
            throw SingularityError("RL evaluation inside the vertex guard at T",
                                   vertex_);
    }
    k.frac_series_eval(w_.data(), w_.size(), 0.0, -alpha_, t.data(), out.data(),
                       t.size());
    if (!piecewise_) return;
    std::vector<double> mem_t, mem_v;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] > vertex_) {
            mem_t.push_back(t[i]);
            idx.push_back(i);
        }
    if (mem_t.empty()) return;
    mem_v.resize(mem_t.size());
    k.frac_series_eval(g_.data(), g_.size(), vertex_, -alpha_, mem_t.data(),
                       mem_v.data(), mem_t.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] += mem_v[i];
}

std::vector<double> evaluation_grid(const AnyModel& v_model,
                                    const AnyModel& i_model, int points) {
    if (points < 2) throw ValidationError("evaluation_grid: need >= 2 points");
    const double lo = std::max(model_domain_lo(v_model), model_domain_lo(i_model));
    const double hi = std::min(model_domain_hi(v_model), model_domain_hi(i_model));
    if (!(hi > lo)) throw ValidationError("evaluation_grid: models do not share a domain");

    double vertex = -1.0, guard = 0.0;
    for (const AnyModel* m : {&v_model, &i_model})
        if (const auto* pw = std::get_if<PiecewisePolyModel>(m)) {
            vertex = pw->vertex;
            guard = vertex_guard(pw->domain_hi());
        }

    std::vector<double> grid;
    grid.reserve(points);
    for (int k = 0; k < points; ++k) {
        const double t = lo + (hi - lo) * k / (points - 1);
        if (!(t > 0.0)) continue;
        if (vertex >= 0.0 && std::abs(t - vertex) < guard) continue;
        grid.push_back(t);
    }
    return grid;
}

MemfractanceCurve memfractance(const AnyModel& v_model, const AnyModel& i_model,
                               FracOrderPair orders, std::vector<double> grid,
                               double delta_rel) {
    if (grid.empty()) throw ValidationError("memfractance: empty grid");
    const RlOfAntiderivative num(v_model, orders.alpha1);
    const RlOfAntiderivative den(i_model, orders.alpha2);

    std::vector<double> nv(grid.size()), dv(grid.size());
    num.eval(grid, nv);
    den.eval(grid, dv);

    double dmax = 0.0;
    for (double d : dv) dmax = std::max(dmax, std::abs(d));
    const double delta = delta_rel * dmax;

    MemfractanceCurve c;
    c.orders = orders;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (std::abs(dv[i]) < delta || dv[i] == 0.0) {
            c.singular_points.push_back(grid[i]);
            continue;
        }
        c.t_grid.push_back(grid[i]);
        c.values.push_back(nv[i] / dv[i]);
    }
    if (c.values.empty())
        throw NoSolutionError("memfractance: all grid points singular");

    double mn, mx;
    kernels::active().minmax(c.values.data(), c.values.size(), &mn, &mx);
    c.range_value = mx - mn;
    c.median_value = median_of(c.values);
    return c;
}

namespace {

// Scan-and-bisect roots of f over [lo, hi]; zeros refined to tol.
void scan_roots(const RlOfAntiderivative& f, double lo, double hi, int points,
                double tol, std::vector<double>& out) {
    if (!(hi > lo) || points < 2) return;
    std::vector<double> ts(points);
    for (int k = 0; k < points; ++k)
        ts[k] = lo + (hi - lo) * k / (points - 1);
    std::vector<double> fs(points);
    f.eval(ts, fs);
    for (int k = 0; k + 1 < points; ++k) {
        if (fs[k] == 0.0) {
            out.push_back(ts[k]);
            continue;
        }
        if (!(fs[k] * fs[k + 1] < 0.0)) continue;
        double a = ts[k], b = ts[k + 1], fa = fs[k];
        while (b - a > tol) {
            const double m = 0.5 * (a + b);
            const double fm = f(m);
            if (fm == 0.0) {
                a = b = m;
                break;
            }
            if (fa * fm < 0.0)
                b = m;
            else {
                a = m;
                fa = fm;
            }
        }
        out.push_back(0.5 * (a + b));
    }
    if (fs[points - 1] == 0.0) out.push_back(ts[points - 1]);
}

ZeroLocus rl_zero_locus(const AnyModel& model, double alpha,
                        std::pair<double, double> interval, int scan_points) {
    const double t_max = model_domain_hi(model);
    const double lo = std::max(interval.first, 1e-9 * std::max(t_max, 1.0));
    const double hi = interval.second;
    const double tol = 1e-9 * t_max;

    const RlOfAntiderivative f(model, alpha);
    ZeroLocus locus;
    locus.parameter = alpha;
    if (f.piecewise()) {
        const double T = f.vertex();
        const double g = f.guard();
        const double span = hi - lo;
        const auto sub_points = [&](double a, double b) {
            return std::max(16, static_cast<int>(scan_points * (b - a) / span));
        };
        if (T - g > lo)
            scan_roots(f, lo, T - g, sub_points(lo, T - g), tol, locus.zeros);
        if (hi > T + g)
            scan_roots(f, T + g, hi, sub_points(T + g, hi), tol, locus.zeros);
    } else {
        scan_roots(f, lo, hi, scan_points, tol, locus.zeros);
    }
    std::sort(locus.zeros.begin(), locus.zeros.end());
    return locus;
}

} // namespace

ZeroLocus denominator_zeros(const AnyModel& i_model, double alpha2,
                            std::pair<double, double> interval, int scan_points) {
    return rl_zero_locus(i_model, alpha2, interval, scan_points);
}

ZeroLocus numerator_zeros(const AnyModel& v_model, double alpha1,
                          std::pair<double, double> interval, int scan_points) {
    return rl_zero_locus(v_model, alpha1, interval, scan_points);
}

namespace {

std::vector<double> alpha_grid(double step) {
    if (!(step > 0.0) || step > 0.1)
        throw ValidationError("alpha grid step must lie in (0, 0.1]");
    std::vector<double> alphas;
    const int n = static_cast<int>(std::round(2.0 / step));
    alphas.reserve(n + 1);
    for (int k = 0; k <= n; ++k) alphas.push_back(std::min(k * step, 2.0));
    return alphas;
}

bool loci_match(const std::vector<double>& a, const std::vector<double>& b,
                double tau) {
    for (double x : a)
        for (double y : b)
            if (std::abs(x - y) <= tau) return true;
    return false;
}

struct CoupleEval {
    double range = std::numeric_limits<double>::infinity();
    double median = 0.0;
    bool valid = false;
};

CoupleEval eval_couple(const std::vector<double>& num,
                       const std::vector<double>& den, double delta_rel) {
    double dmax = 0.0;
    for (double d : den) dmax = std::max(dmax, std::abs(d));
    const double delta = delta_rel * dmax;
    std::vector<double> vals;
    vals.reserve(num.size());
    for (std::size_t i = 0; i < num.size(); ++i) {
        if (std::abs(den[i]) < delta || den[i] == 0.0) continue;
        vals.push_back(num[i] / den[i]);
    }
    CoupleEval e;
    if (vals.empty()) return e;
    double mn, mx;
    kernels::active().minmax(vals.data(), vals.size(), &mn, &mx);
    e.range = mx - mn;
    e.median = median_of(std::move(vals));
    e.valid = true;
    return e;
}

} // namespace

std::vector<std::pair<double, double>>
admissible_couples(const AnyModel& v_model, const AnyModel& i_model,
                   double alpha_step) {
    const auto alphas = alpha_grid(alpha_step);
    const double t_hi = std::min(model_domain_hi(v_model), model_domain_hi(i_model));
    const double t_lo = std::max(model_domain_lo(v_model), model_domain_lo(i_model));
    const double tau = 1e-3 * t_hi;

    std::vector<ZeroLocus> zn(alphas.size()), zd(alphas.size());
    parallel_for(alphas.size(), [&](std::size_t k) {
        zn[k] = numerator_zeros(v_model, alphas[k], {t_lo, t_hi});
        zd[k] = denominator_zeros(i_model, alphas[k], {t_lo, t_hi});
    });

    std::vector<std::pair<double, double>> couples;
    for (std::size_t i1 = 0; i1 < alphas.size(); ++i1)
        for (std::size_t i2 = 0; i2 < alphas.size(); ++i2)
            if (loci_match(zn[i1].zeros, zd[i2].zeros, tau))
                couples.emplace_back(alphas[i1], alphas[i2]);
    return couples;
}

OptimizeResult optimize_orders(const AnyModel& v_model, const AnyModel& i_model,
                               const OptimizeOptions& opts) {
    const auto alphas = alpha_grid(opts.alpha_step);
    const double t_hi = std::min(model_domain_hi(v_model), model_domain_hi(i_model));
    const double t_lo = std::max(model_domain_lo(v_model), model_domain_lo(i_model));
    const double tau = opts.tau_rel * t_hi;
    const auto grid = evaluation_grid(v_model, i_model, opts.grid_points);

    // Zero loci and RL rows per grid order, shared across couples.
    std::vector<ZeroLocus> zn(alphas.size()), zd(alphas.size());
    std::vector<std::vector<double>> num_rows(alphas.size()),
        den_rows(alphas.size());
    parallel_for(alphas.size(), [&](std::size_t k) {
        zn[k] = numerator_zeros(v_model, alphas[k], {t_lo, t_hi});
        zd[k] = denominator_zeros(i_model, alphas[k], {t_lo, t_hi});
        num_rows[k].resize(grid.size());
        den_rows[k].resize(grid.size());
        RlOfAntiderivative(v_model, alphas[k]).eval(grid, num_rows[k]);
        RlOfAntiderivative(i_model, alphas[k]).eval(grid, den_rows[k]);
    });

    struct Candidate {
        double a1, a2;
        CoupleEval eval;
    };
    std::vector<std::pair<std::size_t, std::size_t>> adm;
    for (std::size_t i1 = 0; i1 < alphas.size(); ++i1)
        for (std::size_t i2 = 0; i2 < alphas.size(); ++i2)
            if (loci_match(zn[i1].zeros, zd[i2].zeros, tau))
                adm.emplace_back(i1, i2);
    if (adm.empty())
        throw NoSolutionError(
            "optimize_orders: no admissible (alpha1, alpha2) couple at step " +
            std::to_string(opts.alpha_step) + "; refine the grid");

    std::vector<Candidate> cands(adm.size());
    parallel_for(adm.size(), [&](std::size_t k) {
        const auto [i1, i2] = adm[k];
        cands[k] = {alphas[i1], alphas[i2],
                    eval_couple(num_rows[i1], den_rows[i2], opts.delta_rel)};
    });

    const auto better = [](const Candidate& a, const Candidate& b) {
        if (a.eval.range != b.eval.range) return a.eval.range < b.eval.range;
        if (a.a1 != b.a1) return a.a1 < b.a1;
        return a.a2 < b.a2;
    };
    const Candidate* best = nullptr;
    for (const auto& c : cands)
        if (c.eval.valid && (!best || better(c, *best))) best = &c;
    if (!best)
        throw NoSolutionError("optimize_orders: every admissible couple is "
                              "singular on the whole grid");

    const auto is_flat = [&](const Candidate& c) {
        return c.eval.valid && c.eval.median != 0.0 &&
               c.eval.range <= opts.flat_rel * std::abs(c.eval.median);
    };

    Candidate chosen = *best;
    bool flat = false;
    if (is_flat(*best)) {
        // A constant curve carries no order information; the flat set is one
        // equivalence class, reported at its member closest to the classical
        // resistor couple (1,1).
        flat = true;
        const auto dist2 = [](const Candidate& c) {
            return (c.a1 - 1.0) * (c.a1 - 1.0) + (c.a2 - 1.0) * (c.a2 - 1.0);
        };
        for (const auto& c : cands) {
            if (!is_flat(c)) continue;
            if (dist2(c) < dist2(chosen) ||
                (dist2(c) == dist2(chosen) &&
                 (c.a1 < chosen.a1 || (c.a1 == chosen.a1 && c.a2 < chosen.a2))))
                chosen = c;
        }
    } else if (opts.refine && opts.refine_step > 0.0 &&
               opts.refine_step < opts.alpha_step) {
        // Local continuation around the coarse minimum.
        std::vector<double> r1, r2;
        const int half = static_cast<int>(std::round(opts.alpha_step / opts.refine_step));
        for (int j = -half; j <= half; ++j) {
            const double a1 = chosen.a1 + j * opts.refine_step;
            const double a2 = chosen.a2 + j * opts.refine_step;
            if (a1 >= 0.0 && a1 <= 2.0) r1.push_back(a1);
            if (a2 >= 0.0 && a2 <= 2.0) r2.push_back(a2);
        }
        std::vector<ZeroLocus> rzn(r1.size()), rzd(r2.size());
        std::vector<std::vector<double>> rnum(r1.size()), rden(r2.size());
        parallel_for(r1.size(), [&](std::size_t k) {
            rzn[k] = numerator_zeros(v_model, r1[k], {t_lo, t_hi});
            rnum[k].resize(grid.size());
            RlOfAntiderivative(v_model, r1[k]).eval(grid, rnum[k]);
        });
        parallel_for(r2.size(), [&](std::size_t k) {
            rzd[k] = denominator_zeros(i_model, r2[k], {t_lo, t_hi});
            rden[k].resize(grid.size());
            RlOfAntiderivative(i_model, r2[k]).eval(grid, rden[k]);
        });
        for (std::size_t i1 = 0; i1 < r1.size(); ++i1)
            for (std::size_t i2 = 0; i2 < r2.size(); ++i2) {
                if (!loci_match(rzn[i1].zeros, rzd[i2].zeros, tau)) continue;
                Candidate c{r1[i1], r2[i2],
                            eval_couple(rnum[i1], rden[i2], opts.delta_rel)};
                if (c.eval.valid && better(c, chosen)) chosen = c;
            }
    }

    OptimizeResult res;
    res.orders = FracOrderPair::of(chosen.a1, chosen.a2);
    res.range = chosen.eval.range;
    res.relative_range = chosen.eval.median != 0.0
                             ? chosen.eval.range / std::abs(chosen.eval.median)
                             : std::numeric_limits<double>::infinity();
    res.flat_degenerate = flat;
    res.admissible_count = adm.size();
    return res;
}

const Lattice& Lattice::builtin() {
    static const Lattice l = [] {
        Lattice x;
        x.nodes = {
            {"memristor", 0.0, 0.0},
            {"resistor", 1.0, 1.0},
            {"memcapacitor", 1.0, 0.0},
            {"negative-resistor", 2.0, 0.0},
            {"capacitor", 2.0, 1.5},
            {"2nd-order memristor", 2.0, 2.0},
            {"meminductor", 0.0, 1.0},
            {"inductor", 1.0, 2.0},
            {"negative-conductor", 0.0, 2.0},
        };
        x.triangles = {
            {"T1", {"memcapacitor", "capacitor", "negative-resistor"}},
            {"T2", {"resistor", "memristor", "capacitor"}},
            {"T3", {"2nd-order memristor", "memristor", "memcapacitor"}},
            {"T4", {"memristor", "meminductor", "resistor"}},
            {"T5", {"meminductor", "inductor", "resistor"}},
            {"T6", {"meminductor", "negative-conductor", "inductor"}},
            {"T7", {"resistor", "inductor", "2nd-order memristor"}},
            {"T8", {"resistor", "capacitor", "2nd-order memristor"}},
            {"T9", {"memcapacitor", "resistor", "capacitor"}},
        };
        return x;
    }();
    return l;
}

const LatticeNode& Lattice::node(const std::string& label) const {
    for (const auto& n : nodes)
        if (n.label == label) return n;
    throw ValidationError("lattice: unknown element label '" + label + "'");
}

Lattice Lattice::from_json(const nlohmann::json& j) {
    Lattice l;
    for (const auto& n : j.at("elements"))
        l.nodes.push_back({n.at("label").get<std::string>(),
                           n.at("alpha1").get<double>(),
                           n.at("alpha2").get<double>()});
    for (const auto& t : j.at("triangles")) {
        LatticeTriangle tri;
        tri.name = t.at("name").get<std::string>();
        const auto& labels = t.at("elements");
        if (labels.size() != 3)
            throw ParseError("lattice: triangle '" + tri.name + "' needs 3 elements");
        for (int k = 0; k < 3; ++k) tri.labels[k] = labels.at(k).get<std::string>();
        l.triangles.push_back(std::move(tri));
    }
    for (const auto& t : l.triangles)
        for (const auto& lbl : t.labels) l.node(lbl); // existence check
    return l;
}

Lattice Lattice::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open lattice file: " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

nlohmann::ordered_json Lattice::to_json() const {
    nlohmann::ordered_json elems = nlohmann::ordered_json::array();
    for (const auto& n : nodes)
        elems.push_back({{"label", n.label}, {"alpha1", n.alpha1}, {"alpha2", n.alpha2}});
    nlohmann::ordered_json tris = nlohmann::ordered_json::array();
    for (const auto& t : triangles)
        tris.push_back({{"name", t.name}, {"elements", t.labels}});
    return nlohmann::ordered_json{{"elements", elems}, {"triangles", tris}};
}

ClassificationResult classify(const FracOrderPair& orders, const Lattice& lattice) {
    const double x = orders.alpha1, y = orders.alpha2;
    if (!(x >= 0.0 && x <= 2.0 && y >= 0.0 && y <= 2.0))
        throw DomainError("classify: orders outside [0,2]^2");

    constexpr double kBaryTol = -1e-12;
    ClassificationResult res;
    res.orders = orders;

    bool found = false;
    for (const auto& tri : lattice.triangles) {
        const auto& a = lattice.node(tri.labels[0]);
        const auto& b = lattice.node(tri.labels[1]);
        const auto& c = lattice.node(tri.labels[2]);
        const double det = (b.alpha1 - a.alpha1) * (c.alpha2 - a.alpha2) -
                           (c.alpha1 - a.alpha1) * (b.alpha2 - a.alpha2);
        if (det == 0.0)
            throw ValidationError("lattice: degenerate triangle '" + tri.name + "'");
        const double l1 = ((x - a.alpha1) * (c.alpha2 - a.alpha2) -
                           (c.alpha1 - a.alpha1) * (y - a.alpha2)) / det;
        const double l2 = ((b.alpha1 - a.alpha1) * (y - a.alpha2) -
                           (x - a.alpha1) * (b.alpha2 - a.alpha2)) / det;
        const double l0 = 1.0 - l1 - l2;
        if (l0 >= kBaryTol && l1 >= kBaryTol && l2 >= kBaryTol) {
            res.triangle_name = tri.name;
            res.triangle_labels = tri.labels;
            res.triangle_vertices = {std::pair{a.alpha1, a.alpha2},
                                     std::pair{b.alpha1, b.alpha2},
                                     std::pair{c.alpha1, c.alpha2}};
            found = true;
            break;
        }
    }
    if (!found)
        throw ValidationError("classify: lattice triangulation does not cover the point");

    for (const auto& n : lattice.nodes)
        res.nearest.emplace_back(n.label, std::hypot(x - n.alpha1, y - n.alpha2));
    std::sort(res.nearest.begin(), res.nearest.end(),
              [](const auto& a, const auto& b) {
                  return a.second != b.second ? a.second < b.second
                                              : a.first < b.first;
              });
    return res;
}

ReconstructResult reconstruct_compare(const AnyModel& v_model,
                                      const AnyModel& i_model, const CvRun& run) {
    const double lo = std::max(model_domain_lo(v_model), model_domain_lo(i_model));
    const double hi = std::min(model_domain_hi(v_model), model_domain_hi(i_model));
    const double slack = 1e-9 * (hi - lo);
    for (double t : run.time)
        if (t < lo - slack || t > hi + slack)
            throw DomainError("reconstruct_compare: run time outside model domain");

    ReconstructResult r;
    r.t = run.time;
    r.v = run.voltage;
    r.i = run.current;
    r.v_hat.resize(run.size());
    r.i_hat.resize(run.size());
    model_eval_grid(v_model, run.time, r.v_hat);
    model_eval_grid(i_model, run.time, r.i_hat);
    r.v_stats = fit_stats(r.v, r.v_hat);
    r.i_stats = fit_stats(r.i, r.i_hat);
    return r;
}

} // namespace memfract
