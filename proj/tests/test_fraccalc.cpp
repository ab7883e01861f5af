#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "memfract/errors.hpp"
#include "memfract/fraccalc.hpp"

using namespace memfract;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

PolyModel random_model(std::mt19937_64& rng, int max_degree, double lo, double hi) {
    std::uniform_int_distribution<int> deg(1, max_degree);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<double> raw(deg(rng) + 1);
    for (auto& c : raw) c = coef(rng);
    return PolyModel::from_raw(std::move(raw), lo, hi);
}

} // namespace

TEST_CASE("power rule: classical and half orders") {
    // alpha = 1 on 3 t^2 is the classical derivative 6t.
    CHECK(rel_err(rl_power(3.0, 2.0, 1.0, 2.0), 12.0) < 1e-12);
    // D^{1/2} t = Gamma(2)/Gamma(3/2) sqrt(t); at t = 1 this is 2/sqrt(pi).
    CHECK(rel_err(rl_power(1.0, 1.0, 0.5, 1.0), 1.1283791670955125739) < 1e-12);
    // alpha = 0 is the identity.
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(0.1, 3.0);
    for (int k = 0; k < 20; ++k) {
        const double a = d(rng), beta = d(rng), t = d(rng);
        CHECK(rel_err(rl_power(a, beta, 0.0, t), a * std::pow(t, beta)) < 1e-12);
    }
}

TEST_CASE("power rule hits a reciprocal-gamma pole and returns zero") {
    // beta - alpha + 1 = 0: D^2 of t vanishes.
    CHECK(rl_power(5.0, 1.0, 2.0, 3.0) == 0.0);
    CHECK(rl_power(1.0, 0.0, 1.0, 2.0) == 0.0); // D^1 of a constant
}

TEST_CASE("power rule preconditions") {
    CHECK_THROWS_AS(rl_power(1.0, -1.0, 0.5, 1.0), DomainError);
    CHECK_THROWS_AS(rl_power(1.0, 1.0, -0.1, 1.0), DomainError);
    CHECK_THROWS_AS(rl_power(1.0, 1.0, 0.5, 0.0), DomainError);
}

TEST_CASE("GL oracle: constant, identity and convergence order") {
    // GL of the constant 1 at alpha=1/2, t=1 is 1/Gamma(1/2) = 1/sqrt(pi).
    const auto one = [](double) { return 1.0; };
    CHECK(rel_err(gl_oracle(one, 0.5, 1.0, 1e-5), 0.5641895835477562869) < 1e-3);

    const auto ident = [](double s) { return s; };
    CHECK(rel_err(gl_oracle(ident, 1.0, 1.0, 1e-4), 1.0) < 1e-3);

    // First order in h: halving h halves the error against the closed form.
    const auto sq = [](double s) { return s * s; };
    const double exact = rl_power(1.0, 2.0, 0.7, 1.0);
    const double e1 = std::abs(gl_oracle(sq, 0.7, 1.0, 2e-4) - exact);
    const double e2 = std::abs(gl_oracle(sq, 0.7, 1.0, 1e-4) - exact);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.25));

    CHECK_THROWS_AS(gl_oracle(one, 0.5, 1.0, 0.5), DomainError); // h too large
}

TEST_CASE("rl_poly: classical reduction and identity order") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ts(0.1, 3.8);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = random_model(rng, 10, 0.0, 4.0);
        const auto dm = m.derivative();
        for (int k = 0; k < 4; ++k) {
            const double t = ts(rng);
            const double got = rl_poly(m, 1.0, t);
            const double want = dm.eval_raw(t);
            CHECK(std::abs(got - want) <= 1e-9 * std::max(std::abs(want), 1e-6));
            CHECK(rel_err(rl_poly(m, 0.0, t) + 2.0, m.eval_raw(t) + 2.0) < 1e-9);
        }
    }
}

TEST_CASE("rl_poly frozen value and GL cross-check") {
    // Model t + 2 t^2 + 3 t^3 at alpha = 1/2, t = 2.
    const auto m = PolyModel::from_raw({0.0, 1.0, 2.0, 3.0}, 0.0, 4.0);
    const double got = rl_poly(m, 0.5, 2.0);
    CHECK(rel_err(got, 40.745304904999657507) < 1e-12); // 40-digit reference
    const auto f = [&](double s) { return m.eval_raw(s); };
    CHECK(rel_err(got, gl_oracle(f, 0.5, 2.0, 2e-5)) < 1e-3);
    CHECK_THROWS_AS(rl_poly(m, 0.5, 0.0), DomainError);
}

TEST_CASE("rl_poly is linear in the model") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ts(0.2, 3.5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m1 = random_model(rng, 6, 0.0, 4.0);
        const auto m2 = random_model(rng, 6, 0.0, 4.0);
        std::vector<double> sum(std::max(m1.raw_coefficients().size(),
                                         m2.raw_coefficients().size()),
                                0.0);
        for (std::size_t j = 0; j < m1.raw_coefficients().size(); ++j)
            sum[j] += m1.raw_coefficients()[j];
        for (std::size_t j = 0; j < m2.raw_coefficients().size(); ++j)
            sum[j] += m2.raw_coefficients()[j];
        const auto ms = PolyModel::from_raw(std::move(sum), 0.0, 4.0);
        for (double alpha : {0.3, 1.0, 1.7}) {
            const double t = ts(rng);
            const double lhs = rl_poly(ms, alpha, t);
            const double rhs = rl_poly(m1, alpha, t) + rl_poly(m2, alpha, t);
            CHECK(std::abs(lhs - rhs) <=
                  1e-12 * std::max({std::abs(lhs), std::abs(rhs), 1.0}));
        }
    }
}

TEST_CASE("half-derivative semigroup on t") {
    // D^{1/2} t = G(2)/G(3/2) t^{1/2}; applying D^{1/2} again gives D^1 t = 1.
    const double c1 = rl_power(1.0, 1.0, 0.5, 1.0);     // value at t=1
    const double coeff = c1;                            // of t^{1/2}
    const double twice = rl_power(coeff, 0.5, 0.5, 1.0);
    CHECK(rel_err(twice, 1.0) < 1e-6);
}

TEST_CASE("piecewise collapse: identical pieces equal the single formula") {
    const std::vector<double> raw{0.2, -1.0, 0.5, 0.0, 0.03};
    const double T = 2.0, t_max = 5.0;
    PiecewisePolyModel pw{PolyModel::from_raw(raw, 0.0, T),
                          PolyModel::from_raw(raw, T, t_max), T};
    const auto single = PolyModel::from_raw(raw, 0.0, t_max);
    for (double alpha : {0.0, 0.3, 1.0, 1.45, 2.0}) {
        for (int k = 1; k <= 100; ++k) {
            const double below = T * k / 101.0;
            const double above = T + (t_max - T) * k / 101.0;
            for (double t : {below, above}) {
                if (std::abs(t - T) < vertex_guard(t_max)) continue;
                const double lhs = rl_piecewise(pw, alpha, t);
                const double rhs = rl_poly(single, alpha, t);
                CHECK(std::abs(lhs - rhs) <=
                      1e-8 * std::max(std::abs(rhs), 1e-12));
            }
        }
    }
}

TEST_CASE("piecewise memory formula against the GL oracle") {
    // Distinct pieces; the memory term is exercised for t > T.
    PiecewisePolyModel pw{PolyModel::from_raw({0.0, 1.0, 0.25}, 0.0, 1.0),
                          PolyModel::from_raw({0.5, 0.2, -0.1}, 1.0, 2.5), 1.0};
    const auto f = [&](double s) { return pw(s); };
    for (double alpha : {0.4, 0.8, 1.3}) {
        for (double t : {1.6, 2.0, 2.4}) {
            const double closed = rl_piecewise(pw, alpha, t);
            const double gl = gl_oracle(f, alpha, t, 1e-5 * t);
            CHECK(rel_err(closed, gl) < 2e-3);
        }
    }
}

TEST_CASE("piecewise classical derivative away from the vertex") {
    PiecewisePolyModel pw{PolyModel::from_raw({0.0, 2.0, 0.1}, 0.0, 1.5),
                          PolyModel::from_raw({1.0, -0.4, 0.3}, 1.5, 4.0), 1.5};
    const auto d1 = pw.piece1.derivative();
    const auto d2 = pw.piece2.derivative();
    CHECK(rel_err(rl_piecewise(pw, 1.0, 0.7), d1.eval_raw(0.7)) < 1e-9);
    CHECK(rel_err(rl_piecewise(pw, 1.0, 3.0), d2.eval_raw(3.0)) < 1e-9);
}

TEST_CASE("piecewise evaluation at the vertex raises the singularity error") {
    PiecewisePolyModel pw{PolyModel::from_raw({0.0, 1.0}, 0.0, 2.0),
                          PolyModel::from_raw({1.0, 0.5}, 2.0, 4.0), 2.0};
    CHECK_THROWS_AS(rl_piecewise(pw, 0.5, 2.0), SingularityError);
    CHECK_THROWS_AS(rl_piecewise(pw, 0.5, 2.0 + 0.1 * vertex_guard(4.0)),
                    SingularityError);
    try {
        rl_piecewise(pw, 0.5, 2.0);
    } catch (const SingularityError& e) {
        CHECK(e.location() == 2.0);
        CHECK(std::string(e.what()).find("(t-T)") != std::string::npos);
    }
}

TEST_CASE("order pair carries ceiling indices") {
    const auto p = FracOrderPair::of(0.5, 1.3);
    CHECK(p.m1 == 1);
    CHECK(p.m2 == 2);
    const auto q = FracOrderPair::of(1.0, 2.0);
    CHECK(q.m1 == 1);
    CHECK(q.m2 == 2);
    CHECK_THROWS_AS(FracOrderPair::of(-0.1, 1.0), DomainError);
    CHECK_THROWS_AS(FracOrderPair::of(0.1, 2.3), DomainError);
}
