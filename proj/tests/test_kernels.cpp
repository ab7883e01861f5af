#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "memfract/kernels.hpp"

using namespace memfract;

namespace {

struct Case {
    std::vector<double> coeffs;
    std::vector<double> grid;
};

std::vector<Case> random_cases() {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_real_distribution<double> t(0.01, 40.0);
    std::vector<Case> cases;
    for (int deg : {0, 1, 3, 10, 30}) {
        for (std::size_t m : {1u, 3u, 4u, 7u, 128u, 2001u}) {
            Case c;
            c.coeffs.resize(deg + 1);
            for (auto& x : c.coeffs) x = coef(rng);
            c.grid.resize(m);
            for (auto& x : c.grid) x = t(rng);
            cases.push_back(std::move(c));
        }
    }
    return cases;
}

} // namespace

TEST_CASE("scalar horner matches direct evaluation at low degree") {
    const std::vector<double> c{1.0, 2.0, 3.0}; // 1 + 2t + 3t^2
    const std::vector<double> t{0.0, 1.0, 2.0};
    std::vector<double> out(3);
    kernels::scalar().poly_eval(c.data(), c.size(), t.data(), out.data(), 3);
    CHECK(out[0] == 1.0);
    CHECK(out[1] == 6.0);
    CHECK(out[2] == 17.0);
}

TEST_CASE("clenshaw reproduces chebyshev polynomials") {
    // c = e_k picks out T_k(u).
    std::vector<double> u(9);
    for (int i = 0; i < 9; ++i) u[i] = -1.0 + 0.25 * i;
    for (int k = 0; k < 5; ++k) {
        std::vector<double> c(k + 1, 0.0);
        c[k] = 1.0;
        std::vector<double> out(u.size());
        kernels::scalar().cheb_eval(c.data(), c.size(), u.data(), out.data(),
                                    u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double expected = std::cos(k * std::acos(u[i]));
            CHECK(out[i] == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("minmax equals std::minmax_element") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (std::size_t m : {1u, 2u, 5u, 64u, 1001u}) {
        std::vector<double> x(m);
        for (auto& v : x) v = d(rng);
        double lo, hi;
        kernels::active().minmax(x.data(), m, &lo, &hi);
        CHECK(lo == *std::min_element(x.begin(), x.end()));
        CHECK(hi == *std::max_element(x.begin(), x.end()));
    }
}

TEST_CASE("simd variants match scalar bitwise") {
    if (!kernels::avx2_available()) {
        MESSAGE("avx2 not available on this host, skipping");
        return;
    }
    const auto& s = kernels::scalar();
    const auto& v = kernels::avx2();
    for (const auto& c : random_cases()) {
        std::vector<double> a(c.grid.size()), b(c.grid.size());

        s.poly_eval(c.coeffs.data(), c.coeffs.size(), c.grid.data(), a.data(),
                    c.grid.size());
        v.poly_eval(c.coeffs.data(), c.coeffs.size(), c.grid.data(), b.data(),
                    c.grid.size());
        CHECK(a == b);

        std::vector<double> u(c.grid.size());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = c.grid[i] / 40.0 - 0.5;
        s.cheb_eval(c.coeffs.data(), c.coeffs.size(), u.data(), a.data(), u.size());
        v.cheb_eval(c.coeffs.data(), c.coeffs.size(), u.data(), b.data(), u.size());
        CHECK(a == b);

        s.frac_series_eval(c.coeffs.data(), c.coeffs.size(), -1.0, -0.7,
                           c.grid.data(), a.data(), c.grid.size());
        v.frac_series_eval(c.coeffs.data(), c.coeffs.size(), -1.0, -0.7,
                           c.grid.data(), b.data(), c.grid.size());
        CHECK(a == b);

        double s_lo, s_hi, v_lo, v_hi;
        s.minmax(a.data(), a.size(), &s_lo, &s_hi);
        v.minmax(a.data(), a.size(), &v_lo, &v_hi);
        CHECK(s_lo == v_lo);
        CHECK(s_hi == v_hi);
    }
}

TEST_CASE("frac_series_eval composes pow and horner") {
    const std::vector<double> c{2.0, 1.0}; // 2 + x
    const double t = 3.5, shift = 1.5, expo = -0.5;
    double out;
    kernels::active().frac_series_eval(c.data(), c.size(), shift, expo, &t, &out, 1);
    const double x = t - shift;
    CHECK(out == std::pow(x, expo) * std::fma(1.0, x, 2.0));
}
