#include "memfract/fraccalc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "memfract/errors.hpp"
#include "memfract/gamma.hpp"
#include "memfract/kernels.hpp"

namespace memfract {

FracOrderPair FracOrderPair::of(double a1, double a2) {
    if (!(a1 >= 0.0 && a1 <= 2.0 && a2 >= 0.0 && a2 <= 2.0))
        throw DomainError("FracOrderPair: orders must lie in [0,2]");
    const auto ceil_index = [](double a) {
        return a == std::floor(a) ? static_cast<int>(a)
                                  : static_cast<int>(std::ceil(a));
    };
    return FracOrderPair{a1, a2, ceil_index(a1), ceil_index(a2)};
}

double rl_power(double a, double beta, double alpha, double t) {
    if (!(beta > -1.0)) throw DomainError("rl_power: beta must exceed -1");
    if (!(alpha >= 0.0)) throw DomainError("rl_power: alpha must be >= 0");
    if (!(t > 0.0)) throw DomainError("rl_power: t must be positive");
    return a * gamma(beta + 1.0) * reciprocal_gamma(beta - alpha + 1.0) *
           std::pow(t, beta - alpha);
}

std::vector<double> rl_weights(const std::vector<double>& raw, double alpha) {
    std::vector<double> w(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j)
        w[j] = raw[j] * gamma(static_cast<double>(j) + 1.0) *
               reciprocal_gamma(static_cast<double>(j) + 1.0 - alpha);
    return w;
}

double rl_poly(const PolyModel& m, double alpha, double t) {
    double out = 0.0;
    rl_poly_grid(m, alpha, std::span<const double>(&t, 1), std::span<double>(&out, 1));
    return out;
}

void rl_poly_grid(const PolyModel& m, double alpha, std::span<const double> t,
                  std::span<double> out) {
    for (double ti : t)
        if (!(ti > 0.0)) throw DomainError("rl_poly: t must be positive");
    const auto w = rl_weights(m.raw_coefficients(), alpha);
    kernels::active().frac_series_eval(w.data(), w.size(), 0.0, -alpha,
                                       t.data(), out.data(), t.size());
}

std::vector<double> rl_memory_weights(const std::vector<double>& raw1,
                                      const std::vector<double>& raw2,
                                      double T, double alpha) {
    const std::size_t n = std::max(raw1.size(), raw2.size());
    std::vector<double> g(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double c1 = j < raw1.size() ? raw1[j] : 0.0;
        const double c2 = j < raw2.size() ? raw2[j] : 0.0;
        const double dc = c2 - c1;
        if (dc == 0.0) continue;
        // dc * j!/( (j-k)! Gamma(k+1-alpha) ) * T^{j-k} onto (t-T)^k.
        double fall = 1.0; // j!/(j-k)! = j (j-1) ... (j-k+1)
        double tpow = std::pow(T, static_cast<double>(j));
        for (std::size_t k = 0; k <= j; ++k) {
            g[k] += dc * fall * tpow *
                    reciprocal_gamma(static_cast<double>(k) + 1.0 - alpha);
            fall *= static_cast<double>(j - k);
            tpow /= T;
        }
    }
    return g;
}

double vertex_guard(double t_max) {
    return std::max(1e-6 * t_max, 1e-6);
}

double rl_piecewise(const PiecewisePolyModel& m, double alpha, double t) {
    double out = 0.0;
    rl_piecewise_grid(m, alpha, std::span<const double>(&t, 1),
                      std::span<double>(&out, 1));
    return out;
}

void rl_piecewise_grid(const PiecewisePolyModel& m, double alpha,
                       std::span<const double> t, std::span<double> out) {
    const double T = m.vertex;
    const double guard = vertex_guard(m.domain_hi());
    for (double ti : t) {
        if (!(ti > 0.0)) throw DomainError("rl_piecewise: t must be positive");
        if (std::abs(ti - T) < guard)
            throw SingularityError(
                "rl_piecewise: t = " + std::to_string(ti) +
                    " is within the vertex guard of T = " + std::to_string(T) +
                    " where (t-T)^(-alpha) diverges",
                T);
    }

    // Both branches share the piece-1 term; the memory term switches on
    // past the vertex.
    const auto w1 = rl_weights(m.piece1.raw_coefficients(), alpha);
    const auto g = rl_memory_weights(m.piece1.raw_coefficients(),
                                     m.piece2.raw_coefficients(), T, alpha);
    const auto& k = kernels::active();

    std::vector<double> before, after;
    std::vector<std::size_t> idx_before, idx_after;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < T) {
            before.push_back(t[i]);
            idx_before.push_back(i);
        } else {
            after.push_back(t[i]);
            idx_after.push_back(i);
        }
    }

    if (!before.empty()) {
        std::vector<double> vals(before.size());
        k.frac_series_eval(w1.data(), w1.size(), 0.0, -alpha, before.data(),
                           vals.data(), before.size());
        for (std::size_t i = 0; i < before.size(); ++i) out[idx_before[i]] = vals[i];
    }
    if (!after.empty()) {
        std::vector<double> base(after.size()), mem(after.size());
        k.frac_series_eval(w1.data(), w1.size(), 0.0, -alpha, after.data(),
                           base.data(), after.size());
        k.frac_series_eval(g.data(), g.size(), T, -alpha, after.data(),
                           mem.data(), after.size());
        for (std::size_t i = 0; i < after.size(); ++i)
            out[idx_after[i]] = base[i] + mem[i];
    }
}

double gl_oracle(const std::function<double(double)>& f, double alpha,
                 double t, double h) {
    if (!(t > 0.0)) throw DomainError("gl_oracle: t must be positive");
    if (!(h > 0.0) || h > t / 100.0)
        throw DomainError("gl_oracle: step h must satisfy 0 < h <= t/100");
    const auto n = static_cast<std::size_t>(std::floor(t / h));
    // (-1)^k C(alpha,k) via the recurrence c_k = c_{k-1} (k-1-alpha)/k.
    double coef = 1.0;
    double acc = f(t);
    for (std::size_t k = 1; k <= n; ++k) {
        coef *= (static_cast<double>(k) - 1.0 - alpha) / static_cast<double>(k);
        acc += coef * f(t - static_cast<double>(k) * h);
    }
    return acc / std::pow(h, alpha);
}

} // namespace memfract
