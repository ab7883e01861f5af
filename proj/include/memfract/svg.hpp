#pragma once

#include <string>
#include <vector>

namespace memfract {

/// Minimal SVG chart writer: line/scatter series over auto-scaled axes with
/// decimal ticks. Coordinates follow the SVG convention (y grows downward);
/// the plot rectangle flips data y.
class SvgChart {
public:
    SvgChart(std::string title, std::string x_label, std::string y_label,
             int width = 860, int height = 520);

    void add_line(const std::vector<double>& x, const std::vector<double>& y,
                  const std::string& color, const std::string& name = {});
    void add_points(const std::vector<double>& x, const std::vector<double>& y,
                    const std::string& color, const std::string& name = {},
                    double radius = 2.5);
    void add_vline(double x, const std::string& color);

    std::string render() const;

private:
    struct Series {
        std::vector<double> x, y;
        std::string color, name;
        bool line = true;
        double radius = 2.5;
    };
    std::string title_, x_label_, y_label_;
    int width_, height_;
    std::vector<Series> series_;
    std::vector<std::pair<double, std::string>> vlines_;
};

/// Column-major heatmap of z(x, y) with a blue-white-red ramp.
std::string svg_heatmap(const std::vector<double>& xs,
                        const std::vector<double>& ys,
                        const std::vector<std::vector<double>>& z,
                        const std::string& title, const std::string& x_label,
                        const std::string& y_label);

/// Bar chart over contiguous bins.
std::string svg_bars(const std::vector<double>& edges,
                     const std::vector<std::size_t>& counts,
                     const std::string& title, const std::string& x_label,
                     const std::string& y_label);

} // namespace memfract
