#include "memfract/kernels.hpp"

#include <cmath>

namespace memfract::kernels {
namespace {

// Horner with explicit fma so the rounding sequence matches the vector
// variants element for element.
inline double horner_fma(const double* c, std::size_t n, double x) {
    if (n == 0) return 0.0;
    double acc = c[n - 1];
    for (std::size_t j = n - 1; j-- > 0;) acc = std::fma(acc, x, c[j]);
    return acc;
}

// Clenshaw recurrence for a Chebyshev series, one fma per step.
inline double clenshaw_fma(const double* c, std::size_t n, double u) {
    if (n == 0) return 0.0;
    if (n == 1) return c[0];
    double b1 = 0.0, b2 = 0.0;
    const double two_u = 2.0 * u;
    for (std::size_t k = n - 1; k >= 1; --k) {
        const double b0 = std::fma(two_u, b1, c[k] - b2);
        b2 = b1;
        b1 = b0;
    }
    return std::fma(u, b1, c[0] - b2);
}

void poly_eval_scalar(const double* c, std::size_t n,
                      const double* t, double* out, std::size_t m) {
    for (std::size_t i = 0; i < m; ++i) out[i] = horner_fma(c, n, t[i]);
}

void cheb_eval_scalar(const double* c, std::size_t n,
                      const double* u, double* out, std::size_t m) {
    for (std::size_t i = 0; i < m; ++i) out[i] = clenshaw_fma(c, n, u[i]);
}

void frac_series_eval_scalar(const double* c, std::size_t n,
                             double shift, double expo,
                             const double* t, double* out, std::size_t m) {
    for (std::size_t i = 0; i < m; ++i) {
        const double x = t[i] - shift;
        out[i] = std::pow(x, expo) * horner_fma(c, n, x);
    }
}

void minmax_scalar(const double* x, std::size_t m, double* mn, double* mx) {
    double lo = x[0], hi = x[0];
    for (std::size_t i = 1; i < m; ++i) {
        lo = x[i] < lo ? x[i] : lo;
        hi = x[i] > hi ? x[i] : hi;
    }
    *mn = lo;
    *mx = hi;
}

} // namespace

const Kernels& scalar() {
    static const Kernels k{"scalar", poly_eval_scalar, cheb_eval_scalar,
                           frac_series_eval_scalar, minmax_scalar};
    return k;
}

} // namespace memfract::kernels
