#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "memfract/errors.hpp"
#include "memfract/synth.hpp"

using namespace memfract;

namespace {

// Signed area of the (v, i) polygon restricted to one voltage sign.
double lobe_area(const CvRun& r, bool positive) {
    double a = 0.0;
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
        const bool in = positive ? (r.voltage[k] >= 0.0 && r.voltage[k + 1] >= 0.0)
                                 : (r.voltage[k] <= 0.0 && r.voltage[k + 1] <= 0.0);
        if (in)
            a += r.voltage[k] * r.current[k + 1] - r.voltage[k + 1] * r.current[k];
    }
    return 0.5 * a;
}

} // namespace

TEST_CASE("triangular sweep shape") {
    const auto s = triangular_sweep(0.5, 401, 0.1);
    CHECK(s.size() == 401);
    CHECK(s.time.back() == doctest::Approx(40.0).epsilon(1e-12));
    CHECK(s.voltage.front() == 0.0);
    CHECK(s.voltage.back() == 0.0);

    // One interior |v| maximum value, reached first at the positive peak.
    std::size_t best = 0;
    for (std::size_t k = 1; k < s.size(); ++k)
        if (std::abs(s.voltage[k]) > std::abs(s.voltage[best])) best = k;
    CHECK(best == 100);
    CHECK(s.voltage[100] == 0.5);
    CHECK(s.voltage[300] == -0.5);

    // Odd symmetry about the midpoint sample.
    for (std::size_t k = 0; k < s.size(); ++k)
        CHECK(s.voltage[k] == doctest::Approx(-s.voltage[400 - k]).epsilon(1e-12));

    CHECK_THROWS_AS(triangular_sweep(0.5, 4, 0.1), ValidationError);
    CHECK_THROWS_AS(triangular_sweep(-1.0, 401, 0.1), ValidationError);
}

TEST_CASE("doubling the step delay doubles t_max and nothing else") {
    const auto a = triangular_sweep(1.0, 101, 0.1);
    const auto b = triangular_sweep(1.0, 101, 0.2);
    CHECK(b.time.back() == 2.0 * a.time.back());
    CHECK(a.voltage == b.voltage);
}

TEST_CASE("memristor with equal resistances is an exact ohmic line") {
    MemristorParams p;
    p.r_on = p.r_off = 250.0;
    const auto sweep = triangular_sweep(1.0, 201, 0.05);
    const auto run = simulate_memristor(p, sweep);
    for (std::size_t k = 0; k < run.size(); ++k)
        CHECK(run.current[k] == sweep.voltage[k] / 250.0);
}

TEST_CASE("zero drive produces zero current") {
    auto sweep = triangular_sweep(1.0, 101, 0.05);
    for (auto& v : sweep.voltage) v = 0.0;
    const auto run = simulate_memristor(MemristorParams{}, sweep);
    for (double i : run.current) CHECK(i == 0.0);
}

TEST_CASE("default memristor: pinched two-lobe loop") {
    const auto sweep = triangular_sweep(1.0, 401, 0.008);
    const auto run = simulate_memristor(MemristorParams{}, sweep);

    // Pinch: the current vanishes with the voltage.
    for (std::size_t k = 0; k < run.size(); ++k)
        if (std::abs(run.voltage[k]) < 1e-9) CHECK(std::abs(run.current[k]) < 1e-9);

    CHECK(std::abs(lobe_area(run, true)) > 0.0);
    CHECK(std::abs(lobe_area(run, false)) > 0.0);

    MemristorParams bad;
    bad.w0 = bad.d; // state must start strictly inside (0, D)
    CHECK_THROWS_AS(simulate_memristor(bad, sweep), ValidationError);
}

TEST_CASE("memristor reduces to a resistor when the window freezes state") {
    // Window exponent > 0 with w0 at the boundary-symmetric midpoint still
    // moves; equal R_on/R_off is the frozen reference instead.
    MemristorParams p;
    p.window_exponent = 2;
    const auto sweep = triangular_sweep(1.0, 201, 0.01);
    CHECK_NOTHROW(simulate_memristor(p, sweep));
}

TEST_CASE("linear elements") {
    const auto sweep = triangular_sweep(0.5, 401, 0.1);

    const auto res = simulate_linear_element(LinearKind::resistor, 1000.0, sweep);
    CHECK(res.current[100] == 0.0005); // v = +0.5 V at the peak

    // Capacitor on a pure rising ramp: constant i = C s.
    CvRun ramp;
    ramp.time.resize(101);
    ramp.voltage.resize(101);
    ramp.current.assign(101, 0.0);
    for (int k = 0; k <= 100; ++k) {
        ramp.time[k] = 0.1 * k;
        ramp.voltage[k] = 0.02 * ramp.time[k]; // slope 0.02 V/s
    }
    ramp.sweep_range = {0.0, ramp.voltage.back()};
    ramp.step_delay = 0.1;
    const auto cap = simulate_linear_element(LinearKind::capacitor, 1e-6, ramp);
    for (double i : cap.current)
        CHECK(i == doctest::Approx(1e-6 * 0.02).epsilon(1e-12));

    // Inductor over a completed zero-mean sweep returns to zero current.
    const auto ind = simulate_linear_element(LinearKind::inductor, 2.0, sweep);
    double i_max = 0.0;
    for (double i : ind.current) i_max = std::max(i_max, std::abs(i));
    CHECK(std::abs(ind.current.back()) <= 1e-12 * std::max(i_max, 1.0));

    CHECK_THROWS_AS(simulate_linear_element(LinearKind::resistor, 0.0, sweep),
                    ValidationError);
}
