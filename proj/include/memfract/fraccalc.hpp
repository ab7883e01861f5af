#pragma once

#include <functional>
#include <span>
#include <vector>

#include "memfract/polyfit.hpp"

namespace memfract {

/// Fractional order pair (alpha1, alpha2) in [0,2]^2 with the ceiling
/// indices m satisfying m-1 < alpha < m for non-integer orders; integer
/// orders take the classical-derivative path with m = alpha.
struct FracOrderPair {
    double alpha1 = 1.0;
    double alpha2 = 1.0;
    int m1 = 1;
    int m2 = 1;

    static FracOrderPair of(double a1, double a2);
};

/// Riemann-Liouville derivative (lower terminal 0) of a*t^beta:
///   a * Gamma(beta+1)/Gamma(beta-alpha+1) * t^(beta-alpha).
/// Terms whose Gamma argument lands on a pole contribute exactly 0
/// (reciprocal-gamma convention), never an exception. Preconditions:
/// beta > -1, t > 0, alpha >= 0.
double rl_power(double a, double beta, double alpha, double t);

/// Termwise RL derivative of a polynomial model via its raw coefficients.
double rl_poly(const PolyModel& m, double alpha, double t);
void rl_poly_grid(const PolyModel& m, double alpha, std::span<const double> t,
                  std::span<double> out);

/// Series weights w_j = c_j Gamma(j+1)/Gamma(j+1-alpha), so that the RL
/// derivative is t^{-alpha} * sum_j w_j t^j.
std::vector<double> rl_weights(const std::vector<double>& raw, double alpha);

/// Memory-term weights g_k of the second branch: the RL derivative of
/// a piecewise polynomial for t > T is
///   t^{-alpha} * sum w_j t^j  +  (t-T)^{-alpha} * sum g_k (t-T)^k,
/// where w comes from the first piece and g carries the coefficient
/// differences (piece2 - piece1) integrated against the kernel across T.
std::vector<double> rl_memory_weights(const std::vector<double>& raw1,
                                      const std::vector<double>& raw2,
                                      double T, double alpha);

/// Exclusion radius around the vertex: evaluations with |t - T| below this
/// are refused (the (t-T)^{-alpha} singularity is genuine).
double vertex_guard(double t_max);

/// RL derivative of a piecewise model with the memory effect across the
/// vertex. Throws SingularityError within vertex_guard of T.
double rl_piecewise(const PiecewisePolyModel& m, double alpha, double t);
void rl_piecewise_grid(const PiecewisePolyModel& m, double alpha,
                       std::span<const double> t, std::span<double> out);

/// Grunwald-Letnikov discretization, the independent numerical oracle:
///   D^alpha f(t) ~ h^-alpha sum_k (-1)^k C(alpha,k) f(t - k h).
/// First-order convergent in h; requires h <= t/100.
double gl_oracle(const std::function<double(double)>& f, double alpha,
                 double t, double h);

} // namespace memfract
