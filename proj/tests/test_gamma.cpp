#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "memfract/errors.hpp"
#include "memfract/gamma.hpp"

using memfract::gamma;
using memfract::reciprocal_gamma;

namespace {
double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}
} // namespace

TEST_CASE("exact integer and half-integer values") {
    CHECK(rel_err(gamma(1.0), 1.0) < 1e-14);
    CHECK(rel_err(gamma(2.0), 1.0) < 1e-14);
    CHECK(rel_err(gamma(5.0), 24.0) < 1e-13);
    CHECK(rel_err(gamma(0.5), 1.7724538509055160273) < 1e-13); // sqrt(pi)
    CHECK(rel_err(gamma(-0.5), -3.5449077018110320546) < 1e-13);
    CHECK(rel_err(gamma(-1.5), 2.3632718012073547031) < 1e-13);
}

TEST_CASE("12 significant digits across |x| <= 50") {
    // Reference values computed at 40-digit precision.
    CHECK(rel_err(gamma(0.1), 9.5135076986687318363) < 1e-12);
    CHECK(rel_err(gamma(12.3), 83385367.899969854713) < 1e-12);
    CHECK(rel_err(gamma(30.5), 4.8226969334909086011e31) < 1e-12);
    CHECK(rel_err(gamma(50.0), 6.0828186403426756087e62) < 1e-12);
    CHECK(rel_err(gamma(-20.7), -1.9040507251043990226e-19) < 1e-12);
    CHECK(rel_err(gamma(-49.5), 7.3222696892341270352e-64) < 1e-11);
}

TEST_CASE("recurrence gamma(x+1) = x gamma(x)") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-49.0, 49.0);
    int tested = 0;
    while (tested < 200) {
        const double x = d(rng);
        if (std::abs(x - std::round(x)) < 1e-3) continue; // keep away from poles
        CHECK(rel_err(gamma(x + 1.0), x * gamma(x)) < 1e-11);
        ++tested;
    }
}

TEST_CASE("poles raise and reciprocal gamma vanishes there") {
    CHECK_THROWS_AS(gamma(0.0), memfract::PoleError);
    CHECK_THROWS_AS(gamma(-1.0), memfract::PoleError);
    CHECK_THROWS_AS(gamma(-5.0), memfract::PoleError);
    CHECK(reciprocal_gamma(0.0) == 0.0);
    CHECK(reciprocal_gamma(-1.0) == 0.0);
    CHECK(reciprocal_gamma(-12.0) == 0.0);
    CHECK(rel_err(reciprocal_gamma(0.5), 1.0 / 1.7724538509055160273) < 1e-13);
    CHECK(rel_err(reciprocal_gamma(4.0), 1.0 / 6.0) < 1e-13);
}
