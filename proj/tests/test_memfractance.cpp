#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "memfract/errors.hpp"
#include "memfract/gamma.hpp"
#include "memfract/memfractance.hpp"
#include "memfract/synth.hpp"

using namespace memfract;

namespace {

struct FittedPair {
    AnyModel v, i;
};

FittedPair fit_run(const CvRun& run, int degree) {
    auto [vm, vs] = fit_poly(run.time, run.voltage, degree);
    auto [im, is] = fit_poly(run.time, run.current, degree);
    return {std::move(vm), std::move(im)};
}

// Current model whose RL derivative at `alpha` has exactly the prescribed
// polynomial roots: D^alpha q = t^{1-alpha} * prod (t - root).
PolyModel current_with_prescribed_zeros(const std::vector<double>& roots,
                                        double alpha, double lo, double hi) {
    std::vector<double> poly{1.0};
    for (double r : roots) {
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j + 1] += poly[j];
            next[j] -= r * poly[j];
        }
        poly = std::move(next);
    }
    std::vector<double> raw(poly.size());
    for (std::size_t j = 0; j < poly.size(); ++j)
        raw[j] = poly[j] * gamma(double(j) + 2.0 - alpha) / gamma(double(j) + 1.0);
    return PolyModel::from_raw(std::move(raw), lo, hi);
}

} // namespace

TEST_CASE("resistor memfractance at classical orders is flat at R") {
    const auto sweep = triangular_sweep(0.5, 401, 0.1);
    const auto run = simulate_linear_element(LinearKind::resistor, 1000.0, sweep);
    const auto models = fit_run(run, 8);

    const auto grid = evaluation_grid(models.v, models.i, 2001);
    const auto curve =
        memfractance(models.v, models.i, FracOrderPair::of(1.0, 1.0), grid);

    // Mid-sweep slice, away from the fit's edge wiggle.
    std::vector<double> mid;
    for (std::size_t k = 0; k < curve.t_grid.size(); ++k)
        if (curve.t_grid[k] > 5.0 && curve.t_grid[k] < 35.0)
            mid.push_back(curve.values[k]);
    REQUIRE(!mid.empty());
    const auto [lo, hi] = std::minmax_element(mid.begin(), mid.end());
    CHECK(*lo == doctest::Approx(1000.0).epsilon(0.01));
    CHECK((*hi - *lo) / 1000.0 < 0.01);
}

TEST_CASE("zero numerator gives the zero curve") {
    const auto v = PolyModel::from_raw({0.0}, 0.0, 10.0);
    const auto i = PolyModel::from_raw({0.0, 1e-6, 2e-7}, 0.0, 10.0);
    const auto curve = memfractance(AnyModel{v}, AnyModel{i},
                                    FracOrderPair::of(0.7, 0.4),
                                    evaluation_grid(AnyModel{v}, AnyModel{i}, 501));
    for (double x : curve.values) CHECK(x == 0.0);
    CHECK(curve.range_value == 0.0);
}

TEST_CASE("singular points sit below the denominator threshold") {
    // Denominator passes through zero at t = 5.
    const auto i = current_with_prescribed_zeros({5.0}, 0.5, 0.0, 10.0);
    const auto v = PolyModel::from_raw({0.0, 1.0}, 0.0, 10.0);
    const auto curve = memfractance(AnyModel{v}, AnyModel{i},
                                    FracOrderPair::of(0.5, 0.5),
                                    evaluation_grid(AnyModel{v}, AnyModel{i}, 2001));
    const RlOfAntiderivative den(AnyModel{i}, 0.5);
    double dmax = 0.0;
    for (double t : curve.t_grid) dmax = std::max(dmax, std::abs(den(t)));
    for (double s : curve.singular_points) {
        CHECK(std::abs(den(s)) < 1e-9 * dmax);
        CHECK(std::abs(s - 5.0) < 0.02);
    }
}

TEST_CASE("prescribed denominator roots are recovered") {
    for (double alpha : {0.3, 0.9, 1.6}) {
        const auto i = current_with_prescribed_zeros({2.0, 7.0}, alpha, 0.0, 10.0);
        const auto locus =
            denominator_zeros(AnyModel{i}, alpha, {0.0, 10.0});
        REQUIRE(locus.zeros.size() == 2);
        CHECK(std::abs(locus.zeros[0] - 2.0) < 1e-6);
        CHECK(std::abs(locus.zeros[1] - 7.0) < 1e-6);
    }
    // A single constructed root t - 5 on [0, 10].
    const auto i1 = current_with_prescribed_zeros({5.0}, 0.5, 0.0, 10.0);
    const auto locus = denominator_zeros(AnyModel{i1}, 0.5, {0.0, 10.0});
    REQUIRE(locus.zeros.size() == 1);
    CHECK(std::abs(locus.zeros[0] - 5.0) < 1e-6);
}

TEST_CASE("proportional models admit the whole diagonal") {
    const auto sweep = triangular_sweep(0.5, 201, 0.1);
    const auto run = simulate_linear_element(LinearKind::resistor, 500.0, sweep);
    const auto models = fit_run(run, 6);

    const auto couples = admissible_couples(models.v, models.i, 0.1);
    std::set<std::pair<double, double>> got(couples.begin(), couples.end());
    for (int k = 0; k <= 20; ++k) {
        const double a = std::min(k * 0.1, 2.0);
        CHECK(got.count({a, a}) == 1);
    }
}

TEST_CASE("optimize lands on the classical resistor couple") {
    const auto sweep = triangular_sweep(0.5, 401, 0.1);
    const auto run = simulate_linear_element(LinearKind::resistor, 1000.0, sweep);
    const auto models = fit_run(run, 8);

    OptimizeOptions opts;
    opts.alpha_step = 0.05; // keep the unit test quick
    const auto res = optimize_orders(models.v, models.i, opts);
    CHECK(res.orders.alpha1 == 1.0);
    CHECK(res.orders.alpha2 == 1.0);
    CHECK(res.flat_degenerate);
    CHECK(res.relative_range < 1e-6);
}

TEST_CASE("empty admissible set raises the no-solution error") {
    // Strictly positive numerator (flux of a constant voltage) never vanishes.
    const auto v = PolyModel::from_raw({1.0}, 0.0, 10.0);
    const auto i = current_with_prescribed_zeros({5.0}, 0.5, 0.0, 10.0);
    CHECK_THROWS_AS(optimize_orders(AnyModel{v}, AnyModel{i}, {}), NoSolutionError);
}

TEST_CASE("scaling the current rescales the curve exactly") {
    const auto sweep = triangular_sweep(0.5, 201, 0.1);
    auto run = simulate_linear_element(LinearKind::resistor, 1000.0, sweep);
    auto run2 = run;
    for (auto& c : run2.current) c *= 2.0; // exact in binary

    const auto m1 = fit_run(run, 6);
    const auto m2 = fit_run(run2, 6);
    const auto grid = evaluation_grid(m1.v, m1.i, 501);
    const auto orders = FracOrderPair::of(0.8, 0.8);
    const auto c1 = memfractance(m1.v, m1.i, orders, grid);
    const auto c2 = memfractance(m2.v, m2.i, orders, grid);
    REQUIRE(c1.values.size() == c2.values.size());
    for (std::size_t k = 0; k < c1.values.size(); ++k)
        CHECK(c2.values[k] == c1.values[k] / 2.0);

    OptimizeOptions opts;
    opts.alpha_step = 0.1;
    const auto r1 = optimize_orders(m1.v, m1.i, opts);
    const auto r2 = optimize_orders(m2.v, m2.i, opts);
    CHECK(r1.orders.alpha1 == r2.orders.alpha1);
    CHECK(r1.orders.alpha2 == r2.orders.alpha2);
}

TEST_CASE("classification of the three reference points") {
    const auto c1 = classify(FracOrderPair::of(1.441224116, 0.154232123));
    CHECK(c1.triangle_name == "T1");
    const std::set<std::string> t1(c1.triangle_labels.begin(),
                                   c1.triangle_labels.end());
    CHECK(t1 == std::set<std::string>{"memcapacitor", "capacitor",
                                      "negative-resistor"});

    const auto c2 = classify(FracOrderPair::of(1.971795208, 1.483238482));
    CHECK(c2.triangle_name == "T2");
    const std::set<std::string> t2(c2.triangle_labels.begin(),
                                   c2.triangle_labels.end());
    CHECK(t2 == std::set<std::string>{"resistor", "memristor", "capacitor"});

    const auto c3 = classify(FracOrderPair::of(0.171972381, 0.054935584));
    CHECK(c3.triangle_name == "T3");
    const std::set<std::string> t3(c3.triangle_labels.begin(),
                                   c3.triangle_labels.end());
    CHECK(t3 == std::set<std::string>{"2nd-order memristor", "memristor",
                                      "memcapacitor"});
}

TEST_CASE("classification basics") {
    const auto c = classify(FracOrderPair::of(1.0, 1.0));
    CHECK(c.nearest.front().first == "resistor");
    CHECK(c.nearest.front().second == 0.0);

    CHECK_THROWS_AS(classify(FracOrderPair{2.1, 0.0, 3, 0}), DomainError);

    // Determinism and full coverage of the square.
    for (int a = 0; a <= 40; ++a)
        for (int b = 0; b <= 40; ++b) {
            const auto p = FracOrderPair::of(a * 0.05, b * 0.05);
            const auto r1 = classify(p);
            const auto r2 = classify(p);
            CHECK(r1.triangle_name == r2.triangle_name);
        }
}

TEST_CASE("lattice json round trip") {
    const auto& l = Lattice::builtin();
    const auto l2 = Lattice::from_json(l.to_json());
    CHECK(l2.nodes.size() == l.nodes.size());
    CHECK(l2.triangles.size() == l.triangles.size());
    const auto c = classify(FracOrderPair::of(0.3, 0.3), l2);
    CHECK(!c.triangle_name.empty());
}

TEST_CASE("reconstruction stats") {
    const auto sweep = triangular_sweep(1.0, 401, 0.008);
    const auto run = simulate_memristor(MemristorParams{}, sweep);

    // Degree 30 single fits track a memristor run well.
    const auto models = fit_run(run, 30);
    const auto rec = reconstruct_compare(models.v, models.i, run);
    CHECK(rec.v_stats.r2 >= 0.99);
    CHECK(rec.i_stats.r2 >= 0.99);

    // Refit on the model's own predictions is a perfect reconstruction.
    CvRun synth_run = run;
    model_eval_grid(models.v, run.time, synth_run.voltage);
    model_eval_grid(models.i, run.time, synth_run.current);
    synth_run.sweep_range = {-2.0, 2.0};
    const auto models2 = fit_run(synth_run, 30);
    const auto rec2 = reconstruct_compare(models2.v, models2.i, synth_run);
    CHECK(rec2.v_stats.r2 >= 1.0 - 1e-9);
    CHECK(rec2.i_stats.r2 >= 1.0 - 1e-9);

    // Piecewise degree 10 on a tent-shaped voltage.
    std::vector<double> t(401), tv(401), ti(401);
    for (int k = 0; k <= 400; ++k) {
        t[k] = 0.1 * k;
        tv[k] = t[k] <= 20.0 ? 0.025 * t[k] : 0.025 * (40.0 - t[k]);
        ti[k] = tv[k] / 1000.0;
    }
    auto [pwv, pvs] = fit_piecewise(t, tv, 20.0, 10);
    auto [pwi, pis] = fit_piecewise(t, ti, 20.0, 10);
    CHECK(pvs.first.r2 >= 0.9999);
    CHECK(pvs.second.r2 >= 0.9999);
    CvRun tent;
    tent.time = t;
    tent.voltage = tv;
    tent.current = ti;
    tent.sweep_range = {-0.5, 0.5};
    tent.step_delay = 0.1;
    const auto rec3 =
        reconstruct_compare(AnyModel{pwv}, AnyModel{pwi}, tent);
    CHECK(rec3.v_stats.r2 >= 0.9999);

    // Out-of-domain times are rejected.
    CvRun other = run;
    other.time.back() = 100.0;
    CHECK_THROWS_AS(reconstruct_compare(models.v, models.i, other), DomainError);
}
