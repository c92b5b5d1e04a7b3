#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cavswap/metrics.hpp"

namespace cavswap {

enum class Orientation { clockwise, counterclockwise, undefined };
const char* to_string(Orientation o);

// Sign of the shoelace area of the (P_ex, F) polyline traversed in sigma
// order (implicitly closed). Positive area = counterclockwise; |area| below
// 1e-6 or fewer than 3 points = undefined.
Orientation loop_orientation(std::span<const std::pair<double, double>> points);

struct SigmaRange {
    double lo = 0.01;
    double hi = 50.0;
    int count = 222;  // 60 points per decade over the default span
    bool log_spacing = true;
};
std::vector<double> sample_range(const SigmaRange& r);

struct SolverOptions {
    GridPolicy grid;
    IntegrationOptions ode;
    bool verbose = false;
};

// One fully evaluated pulse configuration (identical sources).
struct PointResult {
    double area = 0.0;
    double sigma1 = 0.0;
    double sigma2 = 0.0;  // == sigma1 for symmetric pulses
    bool ok = false;
    std::string error;

    double p_ex = 0.0;        // Simpson emission probability
    double p_ex_trapz = 0.0;  // trapezoid value used to normalize the kernels
    double rho44_final = 0.0;
    double p_pure = 0.0;
    double p_pure_ratio = 0.0;
    cplx j{};
    double fidelity = 0.0;
    BoundReport bound;

    int grid_points = 0;
    double window = 0.0;
    double runtime_s = 0.0;
};

PointResult evaluate_point(const SystemParams& params, const PulsePolicy& policy,
                           const SolverOptions& opt);

struct TradeoffCurve {
    std::string config_label;
    double pulse_area = 0.0;
    std::vector<PointResult> points;  // sigma ascending; failed points retained with ok=false
    Orientation orientation = Orientation::undefined;
};

// One curve per area: each point runs master equation -> regression grid ->
// swap metrics. Integrator failures mark the point and are skipped.
std::vector<TradeoffCurve> run_tradeoff_sweep(const SystemParams& params,
                                              const std::string& label,
                                              std::span<const double> areas,
                                              const SigmaRange& sigmas,
                                              const SolverOptions& opt);

struct ScanSample {
    std::string family;  // "symmetric" | "sigma1>sigma2" | "sigma1<sigma2"
    double area = 0.0;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double p_ex = 0.0;
    double fidelity = 0.0;
    bool ok = false;
};

struct FrontierBin {
    int bin = 0;  // p_ex in [bin, bin+1) * 0.01
    bool filled = false;
    double fidelity = 0.0;
    int sample_index = -1;
};

struct ParetoScan {
    std::vector<ScanSample> samples;
    std::vector<FrontierBin> frontier;  // all families combined, 100 bins over [0,1]
};

// Max fidelity per 0.01-wide P_ex bin, optionally restricted to one family.
std::vector<FrontierBin> pareto_frontier(const std::vector<ScanSample>& samples,
                                         const std::string& family = "");

// Asymmetric families: sigma2 = ratio*sigma1 with sigma1 from sigma1_range
// (sigma1 > sigma2), the mirrored family with the roles swapped, and the
// symmetric baseline at ratio 1.
ParetoScan run_asymmetric_scan(const SystemParams& params, const std::string& label,
                               std::span<const double> areas, const SigmaRange& sigma1_range,
                               const SigmaRange& ratio_range, const SolverOptions& opt);

struct BoundCheckReport {
    std::string config_label;
    double cooperativity = 0.0;
    double reference_fidelity = 0.0;  // 0.5*(1 + C/(C+1))
    double p_ex_threshold = 0.97;
    bool has_high_emission = false;
    double measured_max_fidelity = 0.0;
    double at_sigma = 0.0;
    double at_area = 0.0;
    double max_p_ex = 0.0;
    double best_fidelity_any = 0.0;
    int points_total = 0;
    int points_high = 0;
};

// Locates the best fidelity among sweep points with P_ex above the threshold
// and compares it against the cooperativity ceiling. When no point reaches
// the threshold the report covers the achievable range instead.
BoundCheckReport run_bound_check(const SystemParams& params, const std::string& label,
                                 std::span<const double> areas, const SigmaRange& sigmas,
                                 double p_ex_threshold, const SolverOptions& opt);

// Convenience: curves flattened to (p_ex, fidelity) pairs of the ok points.
std::vector<std::pair<double, double>> curve_plane_points(const TradeoffCurve& curve);

} // namespace cavswap
