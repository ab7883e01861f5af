#include "memfract/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace memfract {
namespace {

constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

struct Extent {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void widen(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void pad() {
        if (!(hi > lo)) {
            lo -= 0.5;
            hi += 0.5;
        } else {
            const double p = 0.04 * (hi - lo);
            lo -= p;
            hi += p;
        }
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// 1/2/5 tick spacing with ~6 intervals.
std::vector<double> ticks(double lo, double hi) {
    const double span = hi - lo;
    double step = std::pow(10.0, std::floor(std::log10(span / 6.0)));
    if (span / step > 12.0) step *= 5.0;
    else if (span / step > 6.0) step *= 2.0;
    std::vector<double> out;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step)
        out.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
    return out;
}

void axes(std::ostringstream& svg, const Extent& ex, const Extent& ey, int w,
          int h, const std::string& title, const std::string& xl,
          const std::string& yl) {
    const int pw = w - kMarginL - kMarginR, ph = h - kMarginT - kMarginB;
    svg << "<rect x='" << kMarginL << "' y='" << kMarginT << "' width='" << pw
        << "' height='" << ph << "' fill='none' stroke='#444'/>\n";
    svg << "<text x='" << w / 2 << "' y='24' text-anchor='middle' "
        << "font-size='15' font-family='sans-serif'>" << title << "</text>\n";
    svg << "<text x='" << kMarginL + pw / 2 << "' y='" << h - 12
        << "' text-anchor='middle' font-size='12' font-family='sans-serif'>" << xl
        << "</text>\n";
    svg << "<text x='16' y='" << kMarginT + ph / 2
        << "' text-anchor='middle' font-size='12' font-family='sans-serif' "
        << "transform='rotate(-90 16 " << kMarginT + ph / 2 << ")'>" << yl
        << "</text>\n";
    for (double v : ticks(ex.lo, ex.hi)) {
        const double px = kMarginL + (v - ex.lo) / (ex.hi - ex.lo) * pw;
        svg << "<line x1='" << px << "' y1='" << kMarginT + ph << "' x2='" << px
            << "' y2='" << kMarginT + ph + 5 << "' stroke='#444'/>\n"
            << "<text x='" << px << "' y='" << kMarginT + ph + 18
            << "' text-anchor='middle' font-size='10' font-family='sans-serif'>"
            << fmt(v) << "</text>\n";
    }
    for (double v : ticks(ey.lo, ey.hi)) {
        const double py = kMarginT + ph - (v - ey.lo) / (ey.hi - ey.lo) * ph;
        svg << "<line x1='" << kMarginL - 5 << "' y1='" << py << "' x2='" << kMarginL
            << "' y2='" << py << "' stroke='#444'/>\n"
            << "<text x='" << kMarginL - 8 << "' y='" << py + 3
            << "' text-anchor='end' font-size='10' font-family='sans-serif'>"
            << fmt(v) << "</text>\n";
    }
}

} // namespace

SvgChart::SvgChart(std::string title, std::string x_label, std::string y_label,
                   int width, int height)
    : title_(std::move(title)), x_label_(std::move(x_label)),
      y_label_(std::move(y_label)), width_(width), height_(height) {}

void SvgChart::add_line(const std::vector<double>& x, const std::vector<double>& y,
                        const std::string& color, const std::string& name) {
    series_.push_back({x, y, color, name, true, 0.0});
}

void SvgChart::add_points(const std::vector<double>& x, const std::vector<double>& y,
                          const std::string& color, const std::string& name,
                          double radius) {
    series_.push_back({x, y, color, name, false, radius});
}

void SvgChart::add_vline(double x, const std::string& color) {
    vlines_.emplace_back(x, color);
}

std::string SvgChart::render() const {
    Extent ex, ey;
    for (const auto& s : series_) {
        for (double v : s.x) ex.widen(v);
        for (double v : s.y) ey.widen(v);
    }
    for (const auto& [x, color] : vlines_) ex.widen(x);
    ex.pad();
    ey.pad();

    const int pw = width_ - kMarginL - kMarginR, ph = height_ - kMarginT - kMarginB;
    const auto px = [&](double v) { return kMarginL + (v - ex.lo) / (ex.hi - ex.lo) * pw; };
    const auto py = [&](double v) {
        return kMarginT + ph - (v - ey.lo) / (ey.hi - ey.lo) * ph;
    };

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width_
        << "' height='" << height_ << "'>\n<rect width='100%' height='100%' "
        << "fill='white'/>\n";
    axes(svg, ex, ey, width_, height_, title_, x_label_, y_label_);

    for (const auto& [x, color] : vlines_)
        svg << "<line x1='" << px(x) << "' y1='" << kMarginT << "' x2='" << px(x)
            << "' y2='" << kMarginT + ph << "' stroke='" << color
            << "' stroke-dasharray='4 3'/>\n";

    int legend_y = kMarginT + 14;
    for (const auto& s : series_) {
        if (s.line) {
            svg << "<polyline fill='none' stroke='" << s.color
                << "' stroke-width='1.3' points='";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.y[i])) continue;
                svg << fmt(px(s.x[i])) << "," << fmt(py(s.y[i])) << " ";
            }
            svg << "'/>\n";
        } else {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.y[i])) continue;
                svg << "<circle cx='" << fmt(px(s.x[i])) << "' cy='"
                    << fmt(py(s.y[i])) << "' r='" << s.radius << "' fill='"
                    << s.color << "'/>\n";
            }
        }
        if (!s.name.empty()) {
            svg << "<rect x='" << kMarginL + pw - 150 << "' y='" << legend_y - 9
                << "' width='10' height='10' fill='" << s.color << "'/>\n"
                << "<text x='" << kMarginL + pw - 136 << "' y='" << legend_y
                << "' font-size='11' font-family='sans-serif'>" << s.name
                << "</text>\n";
            legend_y += 16;
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string svg_heatmap(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<std::vector<double>>& z,
                        const std::string& title, const std::string& x_label,
                        const std::string& y_label) {
    const int width = 860, height = 620;
    const int pw = width - kMarginL - kMarginR, ph = height - kMarginT - kMarginB;

    Extent ez;
    for (const auto& col : z)
        for (double v : col)
            if (std::isfinite(v)) ez.widen(std::log10(std::max(std::abs(v), 1e-300)));
    ez.pad();

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
        << "' height='" << height << "'>\n<rect width='100%' height='100%' "
        << "fill='white'/>\n";
    Extent ex, ey;
    for (double v : xs) ex.widen(v);
    for (double v : ys) ey.widen(v);
    ex.pad();
    ey.pad();
    axes(svg, ex, ey, width, height, title, x_label, y_label);

    const double cw = static_cast<double>(pw) / xs.size();
    const double ch = static_cast<double>(ph) / ys.size();
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const double v = z[i][j];
            if (!std::isfinite(v)) continue;
            const double u = (std::log10(std::max(std::abs(v), 1e-300)) - ez.lo) /
                             (ez.hi - ez.lo);
            const int r = static_cast<int>(255 * u);
            const int b = static_cast<int>(255 * (1.0 - u));
            const double x = kMarginL + (xs[i] - ex.lo) / (ex.hi - ex.lo) * pw - cw / 2;
            const double y =
                kMarginT + ph - (ys[j] - ey.lo) / (ey.hi - ey.lo) * ph - ch / 2;
            svg << "<rect x='" << fmt(x) << "' y='" << fmt(y) << "' width='"
                << fmt(cw + 0.5) << "' height='" << fmt(ch + 0.5) << "' fill='rgb("
                << r << ",64," << b << ")'/>\n";
        }
    svg << "</svg>\n";
    return svg.str();
}

std::string svg_bars(const std::vector<double>& edges,
                     const std::vector<std::size_t>& counts,
                     const std::string& title, const std::string& x_label,
                     const std::string& y_label) {
    const int width = 860, height = 520;
    const int pw = width - kMarginL - kMarginR, ph = height - kMarginT - kMarginB;

    Extent ex, ey;
    for (double e : edges) ex.widen(e);
    ey.widen(0.0);
    for (auto c : counts) ey.widen(static_cast<double>(c));
    ex.pad();
    ey.pad();

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
        << "' height='" << height << "'>\n<rect width='100%' height='100%' "
        << "fill='white'/>\n";
    axes(svg, ex, ey, width, height, title, x_label, y_label);

    for (std::size_t b = 0; b < counts.size(); ++b) {
        const double x0 = kMarginL + (edges[b] - ex.lo) / (ex.hi - ex.lo) * pw;
        const double x1 = kMarginL + (edges[b + 1] - ex.lo) / (ex.hi - ex.lo) * pw;
        const double y =
            kMarginT + ph -
            (static_cast<double>(counts[b]) - ey.lo) / (ey.hi - ey.lo) * ph;
        svg << "<rect x='" << fmt(x0 + 1) << "' y='" << fmt(y) << "' width='"
            << fmt(std::max(x1 - x0 - 2, 1.0)) << "' height='"
            << fmt(kMarginT + ph - y) << "' fill='#4878cf'/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace memfract
