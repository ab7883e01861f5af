// AVX2+FMA kernel variants. This TU is compiled with -mavx2 -mfma and must
// only be entered after a runtime cpuid check (see kernels_dispatch.cpp).
//
// The recurrences use one vfmadd per step, matching the scalar path's
// std::fma rounding exactly; pow stays scalar per lane. Tails shorter than
// a vector fall back to the same scalar sequence.

#include "memfract/kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace memfract::kernels {
namespace {

inline double horner_fma(const double* c, std::size_t n, double x) {
    if (n == 0) return 0.0;
    double acc = c[n - 1];
    for (std::size_t j = n - 1; j-- > 0;) acc = std::fma(acc, x, c[j]);
    return acc;
}

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

inline __m256d horner_avx2(const double* c, std::size_t n, __m256d x) {
    if (n == 0) return _mm256_setzero_pd();
    __m256d acc = _mm256_set1_pd(c[n - 1]);
    for (std::size_t j = n - 1; j-- > 0;)
        acc = _mm256_fmadd_pd(acc, x, _mm256_set1_pd(c[j]));
    return acc;
}

void poly_eval_avx2(const double* c, std::size_t n,
                    const double* t, double* out, std::size_t m) {
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4)
        _mm256_storeu_pd(out + i, horner_avx2(c, n, _mm256_loadu_pd(t + i)));
    for (; i < m; ++i) out[i] = horner_fma(c, n, t[i]);
}

void cheb_eval_avx2(const double* c, std::size_t n,
                    const double* u, double* out, std::size_t m) {
    if (n <= 1) {
        const double v = n ? c[0] : 0.0;
        for (std::size_t i = 0; i < m; ++i) out[i] = v;
        return;
    }
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        const __m256d uv = _mm256_loadu_pd(u + i);
        const __m256d two_u = _mm256_add_pd(uv, uv);
        __m256d b1 = _mm256_setzero_pd(), b2 = _mm256_setzero_pd();
        for (std::size_t k = n - 1; k >= 1; --k) {
            const __m256d ck = _mm256_set1_pd(c[k]);
            const __m256d b0 = _mm256_fmadd_pd(two_u, b1, _mm256_sub_pd(ck, b2));
            b2 = b1;
            b1 = b0;
        }
        const __m256d c0 = _mm256_set1_pd(c[0]);
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(uv, b1, _mm256_sub_pd(c0, b2)));
    }
    for (; i < m; ++i) out[i] = clenshaw_fma(c, n, u[i]);
}

void frac_series_eval_avx2(const double* c, std::size_t n,
                           double shift, double expo,
                           const double* t, double* out, std::size_t m) {
    const __m256d sh = _mm256_set1_pd(shift);
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        const __m256d x = _mm256_sub_pd(_mm256_loadu_pd(t + i), sh);
        alignas(32) double xl[4], pw[4];
        _mm256_store_pd(xl, x);
        for (int l = 0; l < 4; ++l) pw[l] = std::pow(xl[l], expo);
        const __m256d prod =
            _mm256_mul_pd(_mm256_load_pd(pw), horner_avx2(c, n, x));
        _mm256_storeu_pd(out + i, prod);
    }
    for (; i < m; ++i) {
        const double x = t[i] - shift;
        out[i] = std::pow(x, expo) * horner_fma(c, n, x);
    }
}

void minmax_avx2(const double* x, std::size_t m, double* mn, double* mx) {
    std::size_t i = 0;
    double lo, hi;
    if (m >= 4) {
        __m256d vlo = _mm256_loadu_pd(x);
        __m256d vhi = vlo;
        for (i = 4; i + 4 <= m; i += 4) {
            const __m256d v = _mm256_loadu_pd(x + i);
            vlo = _mm256_min_pd(vlo, v);
            vhi = _mm256_max_pd(vhi, v);
        }
        alignas(32) double a[4], b[4];
        _mm256_store_pd(a, vlo);
        _mm256_store_pd(b, vhi);
        lo = a[0];
        hi = b[0];
        for (int l = 1; l < 4; ++l) {
            lo = a[l] < lo ? a[l] : lo;
            hi = b[l] > hi ? b[l] : hi;
        }
    } else {
        lo = hi = x[0];
        i = 1;
    }
    for (; i < m; ++i) {
        lo = x[i] < lo ? x[i] : lo;
        hi = x[i] > hi ? x[i] : hi;
    }
    *mn = lo;
    *mx = hi;
}

} // namespace

const Kernels& avx2() {
    static const Kernels k{"avx2", poly_eval_avx2, cheb_eval_avx2,
                           frac_series_eval_avx2, minmax_avx2};
    return k;
}

} // namespace memfract::kernels
