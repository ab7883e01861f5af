#pragma once

#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

namespace memfract {

/// Goodness-of-fit summary. SST is defined as SSE + SSR and R^2 as SSR/SST,
/// so the self-consistency identities hold by construction.
struct FitStats {
    double sse = 0;
    double ssr = 0;
    double sst = 0;
    double r2 = 0;
};

/// SSE = sum (y - y_hat)^2, SSR = sum (y_hat - mean(y))^2.
/// Zero-variance convention: SST == 0 reports R^2 = 1.
FitStats fit_stats(std::span<const double> y, std::span<const double> y_hat);

/// Polynomial on a time interval. Internally a Chebyshev series in the
/// affinely rescaled variable u = (t - center)/halfwidth, which is the only
/// representation that stays numerically meaningful at degree 30; the raw
/// monomial coefficients in t are kept alongside because the closed-form
/// fractional derivatives act on powers of t. Raw-basis evaluation is exact
/// in exact arithmetic but loses precision at high degree (eval_raw).
class PolyModel {
public:
    PolyModel() = default;

    /// Model with prescribed monomial coefficients (ascending powers of t).
    static PolyModel from_raw(std::vector<double> raw, double lo, double hi);

    /// Scaled-basis evaluation (Clenshaw). Valid anywhere, exact at domain
    /// endpoints.
    double operator()(double t) const;
    void eval_grid(std::span<const double> t, std::span<double> out) const;

    /// Monomial-basis evaluation in t; flagged as precision-losing for
    /// degree > 15 (kept for cross-checks against the scaled basis).
    double eval_raw(double t) const;

    int degree() const { return static_cast<int>(cheb_.size()) - 1; }
    double domain_lo() const { return lo_; }
    double domain_hi() const { return hi_; }
    double center() const { return center_; }
    double halfwidth() const { return halfwidth_; }

    const std::vector<double>& raw_coefficients() const { return raw_; }
    const std::vector<double>& chebyshev_coefficients() const { return cheb_; }

    /// Coefficient-rule antiderivative c_j -> c_j/(j+1) on the raised power,
    /// integration constant 0 (the antiderivative of t^j from the origin).
    PolyModel antiderivative() const;
    PolyModel derivative() const;

    nlohmann::ordered_json to_json() const;
    static PolyModel from_json(const nlohmann::json& j);

private:
    std::vector<double> cheb_{0.0};
    std::vector<double> raw_{0.0};
    double lo_ = -1.0, hi_ = 1.0;
    double center_ = 0.0, halfwidth_ = 1.0;

    friend std::pair<PolyModel, FitStats>
    fit_poly_on_domain(std::span<const double>, std::span<const double>, int,
                       double, double);
};

/// Two polynomials of equal degree abutting at the sweep vertex T.
/// Both pieces are expanded around t = 0 (powers of t, not of t - T);
/// the closed-form memory-effect derivative depends on that form.
struct PiecewisePolyModel {
    PolyModel piece1; // [lo, T]
    PolyModel piece2; // [T, hi]
    double vertex = 0.0;

    double operator()(double t) const {
        return t <= vertex ? piece1(t) : piece2(t);
    }
    double domain_lo() const { return piece1.domain_lo(); }
    double domain_hi() const { return piece2.domain_hi(); }

    PiecewisePolyModel antiderivative() const;

    nlohmann::ordered_json to_json() const;
    static PiecewisePolyModel from_json(const nlohmann::json& j);
};

/// Least-squares polynomial fit of y(t).
/// Preconditions: len(t) == len(y) > degree, t strictly increasing.
/// The solver is rank-revealing (SVD, threshold 1e-12 relative to the
/// largest singular value); rank deficiency raises FitError.
std::pair<PolyModel, FitStats>
fit_poly(std::span<const double> t, std::span<const double> y, int degree);

/// Independent fits on [lo=first sample, T] and (T, last sample], one
/// FitStats per piece. Each side must hold more than `degree` samples.
std::pair<PiecewisePolyModel, std::pair<FitStats, FitStats>>
fit_piecewise(std::span<const double> t, std::span<const double> y, double T,
              int degree);

} // namespace memfract
