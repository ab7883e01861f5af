#pragma once

#include <array>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "memfract/cv_data.hpp"
#include "memfract/fraccalc.hpp"
#include "memfract/polyfit.hpp"

namespace memfract {

/// A fitted quantity model: one polynomial over the whole record or two
/// pieces abutting at the sweep vertex.
using AnyModel = std::variant<PolyModel, PiecewisePolyModel>;

double model_domain_lo(const AnyModel& m);
double model_domain_hi(const AnyModel& m);
void model_eval_grid(const AnyModel& m, std::span<const double> t,
                     std::span<double> out);

/// RL^alpha of the antiderivative of a fitted model (flux from a voltage
/// model, charge from a current model), with per-order weights precomputed
/// so grid sweeps stay in the batched kernels.
class RlOfAntiderivative {
public:
    RlOfAntiderivative(const AnyModel& model, double alpha);
    double operator()(double t) const;
    void eval(std::span<const double> t, std::span<double> out) const;

    bool piecewise() const { return piecewise_; }
    double vertex() const { return vertex_; }
    double guard() const { return guard_; }

private:
    bool piecewise_ = false;
    double alpha_ = 0.0;
    double vertex_ = 0.0;
    double guard_ = 0.0;
    std::vector<double> w_; // t^{-alpha} series
    std::vector<double> g_; // (t-T)^{-alpha} memory series
};

/// Sampled memfractance curve. Grid points where the denominator dips below
/// the singularity threshold are moved to singular_points; values on the
/// retained grid are finite and range_value = max - min over them.
struct MemfractanceCurve {
    FracOrderPair orders;
    std::vector<double> t_grid;
    std::vector<double> values;
    std::vector<double> singular_points;
    double range_value = 0.0;
    double median_value = 0.0;
};

/// Uniform evaluation grid over the shared model domain: `points` samples,
/// t = 0 dropped, vertex guard excluded for piecewise models.
std::vector<double> evaluation_grid(const AnyModel& v_model,
                                    const AnyModel& i_model, int points);

/// F = RL^{a1}(flux) / RL^{a2}(charge) on the grid. delta_rel scales the
/// singularity threshold: points with |denominator| < delta_rel * max are
/// recorded as singular and excluded.
MemfractanceCurve memfractance(const AnyModel& v_model, const AnyModel& i_model,
                               FracOrderPair orders, std::vector<double> grid,
                               double delta_rel = 1e-9);

/// Roots of one RL-derivative curve at a fixed order.
struct ZeroLocus {
    double parameter = 0.0; // the order alpha
    std::vector<double> zeros;
};

/// All sign-change roots of D^{alpha2} q on a scan grid (default 2000
/// points), refined by bisection to |dt| < 1e-9 t_max. Possibly empty.
ZeroLocus denominator_zeros(const AnyModel& i_model, double alpha2,
                            std::pair<double, double> interval,
                            int scan_points = 2000);

/// Same machinery for the numerator D^{alpha1} (flux of the voltage model).
ZeroLocus numerator_zeros(const AnyModel& v_model, double alpha1,
                          std::pair<double, double> interval,
                          int scan_points = 2000);

/// Couples on the [0,2]^2 grid where some denominator zero t*(a2) matches a
/// numerator zero t*(a1) within tau = 1e-3 t_max, making the singularity
/// removable.
std::vector<std::pair<double, double>>
admissible_couples(const AnyModel& v_model, const AnyModel& i_model,
                   double alpha_step);

struct OptimizeOptions {
    double alpha_step = 0.01;
    int grid_points = 2001;
    double delta_rel = 1e-9;  // singularity threshold scale
    double tau_rel = 1e-3;    // zero-coincidence time tolerance, x t_max
    bool refine = true;       // one local pass at refine_step
    double refine_step = 0.001;
    double flat_rel = 1e-6;   // constant-curve detection threshold
};

struct OptimizeResult {
    FracOrderPair orders;
    double range = 0.0;
    double relative_range = 0.0; // range / |median|
    bool flat_degenerate = false;
    std::size_t admissible_count = 0;
};

/// The admissible couple minimizing range(F) over the evaluation grid, ties
/// broken by smaller alpha1 then alpha2. When the best curves are constant
/// to within flat_rel (no order information left in the range functional),
/// the couple closest to the classical resistor orders (1,1) is reported
/// instead of an arbitrary member of the flat set.
OptimizeResult optimize_orders(const AnyModel& v_model, const AnyModel& i_model,
                               const OptimizeOptions& opts = {});

struct LatticeNode {
    std::string label;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
};

struct LatticeTriangle {
    std::string name;
    std::array<std::string, 3> labels;
};

/// Labeled element lattice over [0,2]^2 with an ordered triangle list;
/// classification reports the first triangle containing the point.
struct Lattice {
    std::vector<LatticeNode> nodes;
    std::vector<LatticeTriangle> triangles;

    static const Lattice& builtin();
    static Lattice from_json(const nlohmann::json& j);
    static Lattice load(const std::string& path);
    nlohmann::ordered_json to_json() const;

    const LatticeNode& node(const std::string& label) const;
};

struct ClassificationResult {
    FracOrderPair orders;
    std::string triangle_name;
    std::array<std::string, 3> triangle_labels;
    std::array<std::pair<double, double>, 3> triangle_vertices;
    std::vector<std::pair<std::string, double>> nearest; // label, distance
};

ClassificationResult classify(const FracOrderPair& orders,
                              const Lattice& lattice = Lattice::builtin());

struct ReconstructResult {
    FitStats v_stats;
    FitStats i_stats;
    std::vector<double> t, v, v_hat, i, i_hat;
};

/// Evaluates both models on the run's time base for residual stats and
/// overlay plots.
ReconstructResult reconstruct_compare(const AnyModel& v_model,
                                      const AnyModel& i_model, const CvRun& run);

} // namespace memfract
