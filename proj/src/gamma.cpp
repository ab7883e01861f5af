#include "memfract/gamma.hpp"

#include <cmath>
#include <string>

#include "memfract/errors.hpp"

namespace memfract {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Lanczos g = 7, n = 9 coefficient set.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// Valid for x >= 0.5.
double lanczos_positive(double x) {
    const double z = x - 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + i);
    const double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

} // namespace

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

double gamma(double x) {
    if (is_nonpositive_integer(x))
        throw PoleError("gamma: pole at x = " + std::to_string(x));
    if (x < 0.5) {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return kPi / (std::sin(kPi * x) * lanczos_positive(1.0 - x));
    }
    return lanczos_positive(x);
}

double reciprocal_gamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x < 0.5) return std::sin(kPi * x) * lanczos_positive(1.0 - x) / kPi;
    return 1.0 / lanczos_positive(x);
}

} // namespace memfract
