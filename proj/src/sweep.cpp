#include "cavswap/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "cavswap/errors.hpp"

namespace cavswap {

const char* to_string(Orientation o) {
    switch (o) {
        case Orientation::clockwise: return "clockwise";
        case Orientation::counterclockwise: return "counterclockwise";
        default: return "undefined";
    }
}

Orientation loop_orientation(std::span<const std::pair<double, double>> points) {
    const std::size_t n = points.size();
    if (n < 3) return Orientation::undefined;
    double twice_area = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [x0, y0] = points[i];
        const auto& [x1, y1] = points[(i + 1) % n];
        twice_area += x0 * y1 - x1 * y0;
    }
    const double area = 0.5 * twice_area;
    if (std::abs(area) < 1e-6) return Orientation::undefined;
    return area > 0.0 ? Orientation::counterclockwise : Orientation::clockwise;
}

std::vector<double> sample_range(const SigmaRange& r) {
    if (r.count < 1 || !(r.lo > 0.0) || !(r.hi >= r.lo))
        throw ConfigError("invalid sample range");
    std::vector<double> out(static_cast<std::size_t>(r.count));
    if (r.count == 1) {
        out[0] = r.lo;
        return out;
    }
    if (r.log_spacing) {
        const double step = std::log(r.hi / r.lo) / (r.count - 1);
        for (int i = 0; i < r.count; ++i)
            out[static_cast<std::size_t>(i)] = r.lo * std::exp(step * i);
    } else {
        const double step = (r.hi - r.lo) / (r.count - 1);
        for (int i = 0; i < r.count; ++i) out[static_cast<std::size_t>(i)] = r.lo + step * i;
    }
    out.back() = r.hi;
    return out;
}

namespace {

PulsePolicy make_pulse(double area, double sigma1, double sigma2) {
    const double tc = default_pulse_center(std::max(sigma1, sigma2));
    if (sigma1 == sigma2) return SymmetricGaussian{area / sigma1, sigma1, tc};
    return AsymmetricGaussian{area / sigma1, sigma1, sigma2, tc};
}

} // namespace

PointResult evaluate_point(const SystemParams& params, const PulsePolicy& policy,
                           const SolverOptions& opt) {
    PointResult res;
    res.sigma1 = pulse_width(policy);
    res.sigma2 = res.sigma1;
    if (const auto* a = std::get_if<AsymmetricGaussian>(&policy)) {
        res.sigma1 = a->sigma_rise;
        res.sigma2 = a->sigma_fall;
    } else if (const auto* s = std::get_if<SymmetricGaussian>(&policy)) {
        res.sigma1 = s->sigma;
        res.sigma2 = s->sigma;
    }
    res.area = pulse_area(policy);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const DynamicsResult dyn = solve_dynamics(params, policy, opt.grid, opt.ode);
        res.grid_points = dyn.grid.n;
        res.window = dyn.grid.t_end();
        res.p_ex = photon_emission_probability(dyn.traj, params);
        res.p_ex_trapz = photon_emission_probability_trapezoid(dyn.traj, params);
        res.rho44_final = dyn.traj.rho44(dyn.traj.size() - 1);
        res.p_pure = pure_photon_probability(params, policy, dyn.grid, opt.ode);
        res.p_pure_ratio = (res.p_ex > 0.0) ? res.p_pure / res.p_ex : 0.0;

        const TwoTimeCorrelation corr = two_time_correlation(params, policy, dyn.traj, opt.ode);
        const SwapResult swap = evaluate_swap(params, corr, res.p_ex_trapz);
        res.j = swap.j_avg;
        res.fidelity = swap.fidelity;
        res.bound = analytic_bound(params, res.p_ex_trapz, corr);
        res.ok = true;
    } catch (const std::exception& e) {
        res.ok = false;
        res.error = e.what();
    }
    res.runtime_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<TradeoffCurve> run_tradeoff_sweep(const SystemParams& params,
                                              const std::string& label,
                                              std::span<const double> areas,
                                              const SigmaRange& sigmas,
                                              const SolverOptions& opt) {
    const std::vector<double> sigma_values = sample_range(sigmas);
    const int per_curve = static_cast<int>(sigma_values.size());
    const int total = per_curve * static_cast<int>(areas.size());
    std::vector<PointResult> flat(static_cast<std::size_t>(total));

#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < total; ++k) {
        const double area = areas[static_cast<std::size_t>(k / per_curve)];
        const double sigma = sigma_values[static_cast<std::size_t>(k % per_curve)];
        flat[static_cast<std::size_t>(k)] =
            evaluate_point(params, make_pulse(area, sigma, sigma), opt);
        if (opt.verbose) {
            const auto& p = flat[static_cast<std::size_t>(k)];
            std::fprintf(stderr, "[%s] S=%g sigma=%g %s\n", label.c_str(), area, sigma,
                         p.ok ? "ok" : p.error.c_str());
        }
    }

    std::vector<TradeoffCurve> curves;
    for (std::size_t a = 0; a < areas.size(); ++a) {
        TradeoffCurve curve;
        curve.config_label = label;
        curve.pulse_area = areas[a];
        curve.points.assign(flat.begin() + static_cast<long>(a) * per_curve,
                            flat.begin() + static_cast<long>(a + 1) * per_curve);
        const auto plane = curve_plane_points(curve);
        curve.orientation = loop_orientation(plane);
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::vector<std::pair<double, double>> curve_plane_points(const TradeoffCurve& curve) {
    std::vector<std::pair<double, double>> plane;
    for (const auto& p : curve.points)
        if (p.ok) plane.emplace_back(p.p_ex, p.fidelity);
    return plane;
}

std::vector<FrontierBin> pareto_frontier(const std::vector<ScanSample>& samples,
                                         const std::string& family) {
    std::vector<FrontierBin> bins(100);
    for (int b = 0; b < 100; ++b) bins[static_cast<std::size_t>(b)].bin = b;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!s.ok) continue;
        if (!family.empty() && s.family != family) continue;
        int b = static_cast<int>(s.p_ex / 0.01);
        b = std::max(0, std::min(b, 99));
        auto& bin = bins[static_cast<std::size_t>(b)];
        if (!bin.filled || s.fidelity > bin.fidelity) {
            bin.filled = true;
            bin.fidelity = s.fidelity;
            bin.sample_index = static_cast<int>(i);
        }
    }
    return bins;
}

ParetoScan run_asymmetric_scan(const SystemParams& params, const std::string& label,
                               std::span<const double> areas, const SigmaRange& sigma1_range,
                               const SigmaRange& ratio_range, const SolverOptions& opt) {
    const auto sigma1_values = sample_range(sigma1_range);
    const auto ratio_values = sample_range(ratio_range);

    struct Task {
        std::string family;
        double area, sigma1, sigma2;
    };
    std::vector<Task> tasks;
    for (double area : areas) {
        for (double s1 : sigma1_values) {
            tasks.push_back({"symmetric", area, s1, s1});
            for (double r : ratio_values) {
                if (r >= 1.0) continue;  // ratio 1 is the symmetric family
                tasks.push_back({"sigma1>sigma2", area, s1, r * s1});
                tasks.push_back({"sigma1<sigma2", area, r * s1, s1});
            }
        }
    }

    ParetoScan scan;
    scan.samples.resize(tasks.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < static_cast<long>(tasks.size()); ++k) {
        const Task& task = tasks[static_cast<std::size_t>(k)];
        const PointResult p =
            evaluate_point(params, make_pulse(task.area, task.sigma1, task.sigma2), opt);
        ScanSample s;
        s.family = task.family;
        s.area = task.area;
        s.sigma1 = task.sigma1;
        s.sigma2 = task.sigma2;
        s.ok = p.ok;
        s.p_ex = p.p_ex;
        s.fidelity = p.fidelity;
        scan.samples[static_cast<std::size_t>(k)] = std::move(s);
        if (opt.verbose)
            std::fprintf(stderr, "[%s asym] S=%g s1=%g s2=%g %s\n", label.c_str(), task.area,
                         task.sigma1, task.sigma2, p.ok ? "ok" : p.error.c_str());
    }
    scan.frontier = pareto_frontier(scan.samples);
    return scan;
}

BoundCheckReport run_bound_check(const SystemParams& params, const std::string& label,
                                 std::span<const double> areas, const SigmaRange& sigmas,
                                 double p_ex_threshold, const SolverOptions& opt) {
    BoundCheckReport rep;
    rep.config_label = label;
    rep.cooperativity = params.cooperativity();
    const double cr = std::isinf(rep.cooperativity)
                          ? 1.0
                          : rep.cooperativity / (rep.cooperativity + 1.0);
    rep.reference_fidelity = 0.5 * (1.0 + cr);
    rep.p_ex_threshold = p_ex_threshold;

    const auto curves = run_tradeoff_sweep(params, label, areas, sigmas, opt);
    for (const auto& curve : curves) {
        for (const auto& p : curve.points) {
            if (!p.ok) continue;
            ++rep.points_total;
            rep.max_p_ex = std::max(rep.max_p_ex, p.p_ex);
            rep.best_fidelity_any = std::max(rep.best_fidelity_any, p.fidelity);
            if (p.p_ex > p_ex_threshold) {
                ++rep.points_high;
                if (!rep.has_high_emission || p.fidelity > rep.measured_max_fidelity) {
                    rep.has_high_emission = true;
                    rep.measured_max_fidelity = p.fidelity;
                    rep.at_sigma = p.sigma1;
                    rep.at_area = curve.pulse_area;
                }
            }
        }
    }
    return rep;
}

} // namespace cavswap
