#pragma once

#include <cstddef>

namespace memfract::kernels {

// Grid kernels behind the series evaluators. Each entry point processes a
// batch of abscissae with one scalar sequence per element:
//
//   poly_eval         out[i] = Horner(c, t[i])                  (fma steps)
//   cheb_eval         out[i] = Clenshaw(c, u[i]),  u in [-1,1]  (fma steps)
//   frac_series_eval  out[i] = pow(t[i]-shift, expo) * Horner(c, t[i]-shift)
//   minmax            running min/max of a finite array
//
// Both variants use correctly rounded fma for the recurrences and scalar
// std::pow per element, so scalar and SIMD paths agree bitwise; the
// equivalence tests assert exact equality.
struct Kernels {
    const char* name;
    void (*poly_eval)(const double* c, std::size_t n,
                      const double* t, double* out, std::size_t m);
    void (*cheb_eval)(const double* c, std::size_t n,
                      const double* u, double* out, std::size_t m);
    void (*frac_series_eval)(const double* c, std::size_t n,
                             double shift, double expo,
                             const double* t, double* out, std::size_t m);
    void (*minmax)(const double* x, std::size_t m, double* mn, double* mx);
};

const Kernels& scalar();

bool avx2_available();
const Kernels& avx2(); // valid only when avx2_available()

/// Best variant for this machine; MEMFRACT_KERNEL=scalar|avx2 overrides.
/// The choice is made once per process.
const Kernels& active();

} // namespace memfract::kernels
