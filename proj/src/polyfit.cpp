#include "memfract/polyfit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "memfract/errors.hpp"
#include "memfract/kernels.hpp"

namespace memfract {
namespace {

constexpr double kRankThreshold = 1e-12;

double clenshaw(const std::vector<double>& c, double u) {
    const std::size_t n = c.size();
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

// Chebyshev series -> monomial coefficients in the same variable.
std::vector<double> cheb_to_monomial(const std::vector<double>& cheb) {
    const std::size_t n = cheb.size();
    std::vector<double> out(n, 0.0);
    // T_k tracked as monomial coefficient rows of the recurrence
    // T_{k+1} = 2 u T_k - T_{k-1}.
    std::vector<double> tk_prev{1.0}, tk{0.0, 1.0};
    out[0] += cheb[0];
    if (n == 1) return out;
    for (std::size_t i = 0; i < tk.size(); ++i) out[i] += cheb[1] * tk[i];
    for (std::size_t k = 2; k < n; ++k) {
        std::vector<double> tk_next(k + 1, 0.0);
        for (std::size_t i = 0; i < tk.size(); ++i) tk_next[i + 1] += 2.0 * tk[i];
        for (std::size_t i = 0; i < tk_prev.size(); ++i) tk_next[i] -= tk_prev[i];
        for (std::size_t i = 0; i < tk_next.size(); ++i) out[i] += cheb[k] * tk_next[i];
        tk_prev = std::move(tk);
        tk = std::move(tk_next);
    }
    return out;
}

// Monomial series -> Chebyshev, peeling the leading term against
// T_k's leading coefficient 2^{k-1}.
std::vector<double> monomial_to_cheb(std::vector<double> mono) {
    const std::size_t n = mono.size();
    std::vector<double> cheb(n, 0.0);
    // Monomial rows of T_0..T_{n-1}.
    std::vector<std::vector<double>> t_rows;
    t_rows.push_back({1.0});
    if (n > 1) t_rows.push_back({0.0, 1.0});
    for (std::size_t k = 2; k < n; ++k) {
        std::vector<double> row(k + 1, 0.0);
        for (std::size_t i = 0; i < t_rows[k - 1].size(); ++i)
            row[i + 1] += 2.0 * t_rows[k - 1][i];
        for (std::size_t i = 0; i < t_rows[k - 2].size(); ++i)
            row[i] -= t_rows[k - 2][i];
        t_rows.push_back(std::move(row));
    }
    for (std::size_t k = n; k-- > 0;) {
        const double lead = t_rows[k].back();
        const double ck = mono[k] / lead;
        cheb[k] = ck;
        for (std::size_t i = 0; i < t_rows[k].size(); ++i)
            mono[i] -= ck * t_rows[k][i];
    }
    return cheb;
}

// p(u) with u = (t - c)/h  ->  coefficients in t.
std::vector<double> monomial_u_to_raw(const std::vector<double>& mu,
                                      double center, double halfwidth) {
    const std::size_t n = mu.size();
    std::vector<double> raw(n, 0.0);
    // Accumulate m_k h^{-k} (t - c)^k term by term.
    std::vector<double> pw{1.0}; // (t - c)^k
    for (std::size_t k = 0; k < n; ++k) {
        const double scale = mu[k] / std::pow(halfwidth, static_cast<double>(k));
        for (std::size_t i = 0; i < pw.size(); ++i) raw[i] += scale * pw[i];
        if (k + 1 < n) {
            std::vector<double> nxt(pw.size() + 1, 0.0);
            for (std::size_t i = 0; i < pw.size(); ++i) {
                nxt[i + 1] += pw[i];
                nxt[i] -= center * pw[i];
            }
            pw = std::move(nxt);
        }
    }
    return raw;
}

// P(t) -> coefficients in u via t = c + h u.
std::vector<double> raw_to_monomial_u(const std::vector<double>& raw,
                                      double center, double halfwidth) {
    const std::size_t n = raw.size();
    std::vector<double> mu(n, 0.0);
    std::vector<double> pw{1.0}; // (c + h u)^j
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < pw.size(); ++i) mu[i] += raw[j] * pw[i];
        if (j + 1 < n) {
            std::vector<double> nxt(pw.size() + 1, 0.0);
            for (std::size_t i = 0; i < pw.size(); ++i) {
                nxt[i] += center * pw[i];
                nxt[i + 1] += halfwidth * pw[i];
            }
            pw = std::move(nxt);
        }
    }
    return mu;
}

} // namespace

FitStats fit_stats(std::span<const double> y, std::span<const double> y_hat) {
    if (y.size() != y_hat.size())
        throw ValidationError("fit_stats: length mismatch (" +
                              std::to_string(y.size()) + " vs " +
                              std::to_string(y_hat.size()) + ")");
    if (y.size() < 2)
        throw ValidationError("fit_stats: need at least 2 samples");
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());

    FitStats s;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double e = y[i] - y_hat[i];
        const double r = y_hat[i] - mean;
        s.sse += e * e;
        s.ssr += r * r;
    }
    s.sst = s.sse + s.ssr;
    s.r2 = s.sst == 0.0 ? (s.sse == 0.0 ? 1.0 : 0.0) : s.ssr / s.sst;
    return s;
}

PolyModel PolyModel::from_raw(std::vector<double> raw, double lo, double hi) {
    if (raw.empty()) raw.push_back(0.0);
    if (!(hi > lo))
        throw ValidationError("PolyModel: degenerate domain");
    PolyModel m;
    m.lo_ = lo;
    m.hi_ = hi;
    m.center_ = 0.5 * (lo + hi);
    m.halfwidth_ = 0.5 * (hi - lo);
    m.raw_ = std::move(raw);
    m.cheb_ = monomial_to_cheb(raw_to_monomial_u(m.raw_, m.center_, m.halfwidth_));
    return m;
}

double PolyModel::operator()(double t) const {
    return clenshaw(cheb_, (t - center_) / halfwidth_);
}

void PolyModel::eval_grid(std::span<const double> t, std::span<double> out) const {
    std::vector<double> u(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) u[i] = (t[i] - center_) / halfwidth_;
    kernels::active().cheb_eval(cheb_.data(), cheb_.size(), u.data(), out.data(),
                                u.size());
}

double PolyModel::eval_raw(double t) const {
    double acc = raw_.back();
    for (std::size_t j = raw_.size() - 1; j-- > 0;) acc = std::fma(acc, t, raw_[j]);
    return acc;
}

PolyModel PolyModel::antiderivative() const {
    std::vector<double> r(raw_.size() + 1, 0.0);
    for (std::size_t j = 0; j < raw_.size(); ++j)
        r[j + 1] = raw_[j] / static_cast<double>(j + 1);
    return from_raw(std::move(r), lo_, hi_);
}

PolyModel PolyModel::derivative() const {
    std::vector<double> r(std::max<std::size_t>(raw_.size() - 1, 1), 0.0);
    for (std::size_t j = 1; j < raw_.size(); ++j)
        r[j - 1] = raw_[j] * static_cast<double>(j);
    return from_raw(std::move(r), lo_, hi_);
}

nlohmann::ordered_json PolyModel::to_json() const {
    return nlohmann::ordered_json{{"degree", degree()},
                                  {"domain", {lo_, hi_}},
                                  {"scaling", {{"center", center_}, {"halfwidth", halfwidth_}}},
                                  {"basis", "chebyshev"},
                                  {"chebyshev_coefficients", cheb_},
                                  {"coefficients", raw_}};
}

PolyModel PolyModel::from_json(const nlohmann::json& j) {
    PolyModel m;
    m.lo_ = j.at("domain").at(0).get<double>();
    m.hi_ = j.at("domain").at(1).get<double>();
    m.center_ = j.at("scaling").at("center").get<double>();
    m.halfwidth_ = j.at("scaling").at("halfwidth").get<double>();
    m.cheb_ = j.at("chebyshev_coefficients").get<std::vector<double>>();
    if (j.contains("coefficients"))
        m.raw_ = j.at("coefficients").get<std::vector<double>>();
    else
        m.raw_ = monomial_u_to_raw(cheb_to_monomial(m.cheb_), m.center_, m.halfwidth_);
    if (m.cheb_.empty() || m.raw_.empty())
        throw ParseError("PolyModel: empty coefficient arrays");
    return m;
}

PiecewisePolyModel PiecewisePolyModel::antiderivative() const {
    return PiecewisePolyModel{piece1.antiderivative(), piece2.antiderivative(),
                              vertex};
}

nlohmann::ordered_json PiecewisePolyModel::to_json() const {
    return nlohmann::ordered_json{{"vertex_time", vertex},
                                  {"piece1", piece1.to_json()},
                                  {"piece2", piece2.to_json()}};
}

PiecewisePolyModel PiecewisePolyModel::from_json(const nlohmann::json& j) {
    PiecewisePolyModel m;
    m.vertex = j.at("vertex_time").get<double>();
    m.piece1 = PolyModel::from_json(j.at("piece1"));
    m.piece2 = PolyModel::from_json(j.at("piece2"));
    return m;
}

std::pair<PolyModel, FitStats>
fit_poly_on_domain(std::span<const double> t, std::span<const double> y,
                   int degree, double lo, double hi) {
    if (degree < 0) throw FitError("fit_poly: negative degree");
    if (t.size() != y.size())
        throw ValidationError("fit_poly: t/y length mismatch");
    if (t.size() <= static_cast<std::size_t>(degree))
        throw FitError("fit_poly: underdetermined (" + std::to_string(t.size()) +
                       " samples for degree " + std::to_string(degree) + ")");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw ValidationError("fit_poly: time not strictly increasing at index " +
                                  std::to_string(i));

    PolyModel m;
    m.lo_ = lo;
    m.hi_ = hi;
    m.center_ = 0.5 * (lo + hi);
    m.halfwidth_ = hi > lo ? 0.5 * (hi - lo) : 1.0;

    const std::size_t n = t.size();
    const std::size_t cols = static_cast<std::size_t>(degree) + 1;
    Eigen::MatrixXd a(n, cols);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (t[i] - m.center_) / m.halfwidth_;
        a(i, 0) = 1.0;
        if (cols > 1) a(i, 1) = u;
        for (std::size_t k = 2; k < cols; ++k)
            a(i, k) = 2.0 * u * a(i, k - 1) - a(i, k - 2);
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(kRankThreshold);
    if (svd.rank() < static_cast<Eigen::Index>(cols))
        throw FitError("fit_poly: rank deficient after scaling (rank " +
                       std::to_string(svd.rank()) + " of " + std::to_string(cols) + ")");
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
    const Eigen::VectorXd sol = svd.solve(rhs);
    m.cheb_.assign(sol.data(), sol.data() + cols);
    m.raw_ = monomial_u_to_raw(cheb_to_monomial(m.cheb_), m.center_, m.halfwidth_);

    std::vector<double> y_hat(n);
    m.eval_grid(t, y_hat);
    return {std::move(m), fit_stats(y, y_hat)};
}

std::pair<PolyModel, FitStats>
fit_poly(std::span<const double> t, std::span<const double> y, int degree) {
    if (t.empty()) throw FitError("fit_poly: empty input");
    return fit_poly_on_domain(t, y, degree, t.front(), t.back());
}

std::pair<PiecewisePolyModel, std::pair<FitStats, FitStats>>
fit_piecewise(std::span<const double> t, std::span<const double> y, double T,
              int degree) {
    if (t.size() != y.size())
        throw ValidationError("fit_piecewise: t/y length mismatch");
    if (t.size() < 2 || !(T > t.front()) || !(T < t.back()))
        throw ValidationError("fit_piecewise: vertex T not strictly inside the record");

    std::size_t split = 0; // first index with t > T
    while (split < t.size() && t[split] <= T) ++split;

    const auto need = static_cast<std::size_t>(degree) + 1;
    if (split < need)
        throw FitError("fit_piecewise: piece 1 has too few samples (" +
                       std::to_string(split) + " for degree " + std::to_string(degree) + ")");
    if (t.size() - split < need)
        throw FitError("fit_piecewise: piece 2 has too few samples (" +
                       std::to_string(t.size() - split) + " for degree " +
                       std::to_string(degree) + ")");

    auto [m1, s1] = fit_poly_on_domain(t.subspan(0, split), y.subspan(0, split),
                                       degree, t.front(), T);
    auto [m2, s2] = fit_poly_on_domain(t.subspan(split), y.subspan(split),
                                       degree, T, t.back());
    return {PiecewisePolyModel{std::move(m1), std::move(m2), T}, {s1, s2}};
}

} // namespace memfract
