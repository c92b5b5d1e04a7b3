#include <chrono>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "cavswap/config_io.hpp"
#include "cavswap/errors.hpp"
#include "cavswap/io.hpp"
#include "cavswap/multipartite.hpp"

using namespace cavswap;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

json provenance_json(const Config& cfg, const SolverOptions& opt) {
    return {{"label", cfg.label},
            {"params", params_to_json(cfg.params)},
            {"tolerance", opt.ode.abs_tol},
            {"grid_points", opt.grid.base_points},
            {"grid_max_points", opt.grid.max_points},
            {"residual_tol", opt.grid.residual_tol}};
}

std::string curve_filename(const TradeoffCurve& curve) {
    return "curve_" + curve.config_label + "_S" + format_short(curve.pulse_area) + ".csv";
}

int cmd_single(const Config& cfg, const SolverOptions& opt, const std::string& out_dir,
               bool dump_corr, bool dump_traj) {
    if (!cfg.pulse) throw ConfigError("single: config needs a pulse section");
    const auto& pulse = *cfg.pulse;
    const auto t0 = std::chrono::steady_clock::now();

    const DynamicsResult dyn = solve_dynamics(cfg.params, pulse, opt.grid, opt.ode);
    const double p_ex = photon_emission_probability(dyn.traj, cfg.params);
    const double p_trapz = photon_emission_probability_trapezoid(dyn.traj, cfg.params);
    const double p_pure = pure_photon_probability(cfg.params, pulse, dyn.grid, opt.ode);
    const TwoTimeCorrelation corr = two_time_correlation(cfg.params, pulse, dyn.traj, opt.ode);
    const SwapResult swap = evaluate_swap(cfg.params, corr, p_trapz);
    const BoundReport bound = analytic_bound(cfg.params, p_trapz, corr);
    const auto grid_times = dyn.grid.times();
    const AdiabaticityReport adiabatic = adiabaticity_report(cfg.params, pulse, grid_times);
    const double runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json out = {{"label", cfg.label},
                {"params", params_to_json(cfg.params)},
                {"pulse", pulse_to_json(pulse)},
                {"pulse_area", pulse_area(pulse)},
                {"swap", swap_result_to_json(swap)},
                {"bound", bound_report_to_json(bound)},
                {"adiabaticity", adiabaticity_to_json(adiabatic)},
                {"p_ex_simpson", p_ex},
                {"p_ex_trapezoid", p_trapz},
                {"rho44_final", dyn.traj.rho44(dyn.traj.size() - 1)},
                {"p_pure", p_pure},
                {"p_pure_ratio", p_ex > 0 ? p_pure / p_ex : 0.0},
                {"grid", {{"points", dyn.grid.n}, {"window", dyn.grid.t_end()},
                          {"extensions", dyn.extensions}, {"residual", dyn.residual}}},
                {"runtime_s", runtime}};
    std::cout << out.dump(2) << std::endl;
    write_json_file(out_dir + "/single_result.json", out);
    if (dump_traj) write_trajectory_csv(out_dir + "/trajectory.csv", dyn.traj);
    if (dump_corr) dump_correlation(out_dir + "/correlation", corr);
    return 0;
}

int cmd_sweep(const Config& cfg, const SolverOptions& opt, const std::string& out_dir) {
    const auto curves =
        run_tradeoff_sweep(cfg.params, cfg.label, cfg.sweep.areas, cfg.sweep.sigmas, opt);
    const json prov = provenance_json(cfg, opt);
    int ok_points = 0;
    json summary = json::array();
    for (const auto& curve : curves) {
        write_curve_csv(out_dir + "/" + curve_filename(curve), curve, prov);
        int n_ok = 0;
        for (const auto& p : curve.points) n_ok += p.ok ? 1 : 0;
        ok_points += n_ok;
        summary.push_back({{"area", curve.pulse_area},
                           {"orientation", to_string(curve.orientation)},
                           {"points_ok", n_ok},
                           {"points_total", curve.points.size()},
                           {"file", curve_filename(curve)}});
        std::cout << "S=" << format_short(curve.pulse_area) << " " << to_string(curve.orientation)
                  << " (" << n_ok << "/" << curve.points.size() << " points)\n";
    }
    json meta = prov;
    meta["curves"] = summary;
    meta["sigma_range"] = {{"lo", cfg.sweep.sigmas.lo},
                           {"hi", cfg.sweep.sigmas.hi},
                           {"count", cfg.sweep.sigmas.count},
                           {"spacing", cfg.sweep.sigmas.log_spacing ? "log" : "linear"}};
    write_json_file(out_dir + "/run_meta.json", meta);
    return ok_points == 0 ? kExitNumerical : 0;
}

int cmd_asymscan(const Config& cfg, const SolverOptions& opt, const std::string& out_dir) {
    const auto scan = run_asymmetric_scan(cfg.params, cfg.label, cfg.asymscan.areas,
                                          cfg.asymscan.sigma1, cfg.asymscan.ratio, opt);
    const json prov = provenance_json(cfg, opt);
    write_scan_samples_csv(out_dir + "/scan_samples.csv", scan, prov);
    write_frontier_csv(out_dir + "/frontier.csv", scan);
    write_json_file(out_dir + "/run_meta.json", prov);
    int ok = 0, filled = 0;
    for (const auto& s : scan.samples) ok += s.ok ? 1 : 0;
    for (const auto& b : scan.frontier) filled += b.filled ? 1 : 0;
    std::cout << ok << "/" << scan.samples.size() << " samples, " << filled
              << " frontier bins filled\n";
    return ok == 0 ? kExitNumerical : 0;
}

int cmd_bound(const Config& cfg, const SolverOptions& opt, const std::string& out_dir) {
    const auto rep = run_bound_check(cfg.params, cfg.label, cfg.bound.areas, cfg.bound.sigmas,
                                     cfg.bound.p_ex_threshold, opt);
    const json j = bound_check_to_json(rep);
    std::cout << j.dump(2) << std::endl;
    write_json_file(out_dir + "/bound_report.json", j);
    return rep.points_total == 0 ? kExitNumerical : 0;
}

int cmd_multipartite(const Config& cfg, const SolverOptions& opt, const std::string& out_dir) {
    const auto& ms = cfg.multipartite;
    PostSelectedScheme scheme;
    if (!ms.scheme_file.empty()) {
        scheme = load_scheme(ms.scheme_file);
    } else if (ms.preset == "bell") {
        scheme = bell_scheme();
    } else if (ms.preset == "ghz") {
        scheme = ghz_scheme(ms.n_sources);
    } else if (ms.preset == "w") {
        scheme = w_scheme(ms.n_sources);
    } else {
        throw ConfigError("multipartite: unknown preset '" + ms.preset + "'");
    }

    double fidelity = 0.0;
    if (ms.kernels_from_dynamics) {
        const int n_sources = ms.preset == "bell" ? 2 : ms.n_sources;
        std::vector<PulsePolicy> pulses;
        for (int s = 0; s < n_sources; ++s) {
            if (s < static_cast<int>(ms.source_pulses.size()))
                pulses.push_back(ms.source_pulses[static_cast<std::size_t>(s)]);
            else if (cfg.pulse)
                pulses.push_back(*cfg.pulse);
            else
                throw ConfigError("multipartite: need source_pulses or a pulse section");
        }
        // shared grid over the widest window of the source set
        double window = 0.0;
        int n_points = opt.grid.base_points;
        for (const auto& p : pulses) window = std::max(window, initial_window(cfg.params, p));
        UniformGrid grid;
        std::vector<DensityTrajectory> trajs;
        for (int ext = 0;; ++ext) {
            for (const auto& p : pulses)
                n_points = std::max(n_points, make_grid(cfg.params, p, window, opt.grid).n);
            grid = UniformGrid{0.0, window / (n_points - 1), n_points};
            trajs.clear();
            double residual = 0.0;
            for (const auto& p : pulses) {
                trajs.push_back(evolve_density(cfg.params, p, grid, opt.ode));
                residual = std::max(residual, trajs.back().final_residual());
            }
            if (residual < opt.grid.residual_tol) break;
            if (ext >= opt.grid.max_extensions)
                throw NonConvergence("multipartite: shared window did not converge");
            window *= opt.grid.window_growth;
        }
        KernelTable kernels(grid.times());
        for (int s = 0; s < n_sources; ++s) {
            const auto corr = two_time_correlation(cfg.params, pulses[static_cast<std::size_t>(s)],
                                                   trajs[static_cast<std::size_t>(s)], opt.ode);
            kernels.add("s" + std::to_string(s + 1), normalized_kernel(corr));
        }
        fidelity = averaged_fidelity(scheme, kernels);
    } else {
        if (ms.waveforms.empty())
            throw ConfigError("multipartite: need waveforms or kernels_from_dynamics");
        double t_end = 0.0;
        for (const auto& [id, shape] : ms.waveforms)
            t_end = std::max(t_end, pulse_center(shape) + 6.0 * pulse_width(shape));
        const int n = opt.grid.base_points;
        UniformGrid grid{0.0, t_end / (n - 1), n};
        WaveformTable table(grid.times());
        for (const auto& [id, shape] : ms.waveforms) {
            Eigen::VectorXcd samples(n);
            for (int i = 0; i < n; ++i) samples(i) = eval_pulse(shape, grid.time(i));
            table.add(id, samples);
        }
        fidelity = averaged_fidelity(scheme, table);
    }

    const auto survivors = surviving_terms(scheme);
    json out = {{"label", cfg.label},
                {"fidelity", fidelity},
                {"surviving_terms", survivors},
                {"n_terms", scheme.terms.size()},
                {"dropped_assignments", scheme.dropped_assignments}};
    std::cout << out.dump(2) << std::endl;
    write_json_file(out_dir + "/multipartite_result.json", out);
    write_json_file(out_dir + "/scheme.json", scheme_to_json(scheme));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rate-fidelity trade-off simulator for cavity-mediated entanglement"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir = "out";
    int threads = 0;
    int grid_points = 0;
    double tolerance = 0.0;
    bool dump_corr = false;
    bool dump_traj = false;
    bool verbose = false;

    app.add_option("--config", config_path, "JSON configuration file")->required();
    app.add_option("--out", out_dir, "output directory (created if missing)");
    app.add_option("--threads", threads, "worker threads (0 = library default)");
    app.add_option("--grid-points", grid_points, "base reporting-grid resolution");
    app.add_option("--tolerance", tolerance, "integrator abs/rel tolerance");
    app.add_flag("--dump-correlation", dump_corr, "write the two-time grid (single)");
    app.add_flag("--dump-trajectory", dump_traj, "write the density trajectory CSV (single)");
    app.add_flag("--verbose", verbose, "per-point progress on stderr");

    auto* sweep_cmd = app.add_subcommand("sweep", "constant-area sigma sweeps");
    auto* asym_cmd = app.add_subcommand("asymscan", "asymmetric-pulse Pareto scan");
    auto* bound_cmd = app.add_subcommand("bound", "cooperativity-ceiling check");
    auto* single_cmd = app.add_subcommand("single", "one pulse configuration");
    auto* multi_cmd = app.add_subcommand("multipartite", "post-selected multipartite fidelity");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        Config cfg = load_config(config_path);
        SolverOptions opt;
        opt.grid = cfg.grid;
        opt.ode.abs_tol = opt.ode.rel_tol = cfg.tolerance;
        opt.verbose = verbose;
        if (grid_points > 0) {
            opt.grid.base_points = grid_points;
            opt.grid.max_points = std::max(opt.grid.max_points, grid_points);
        }
        if (tolerance > 0.0) opt.ode.abs_tol = opt.ode.rel_tol = tolerance;
#ifdef _OPENMP
        if (threads > 0) omp_set_num_threads(threads);
#endif
        std::filesystem::create_directories(out_dir);

        if (*single_cmd) return cmd_single(cfg, opt, out_dir, dump_corr, dump_traj);
        if (*sweep_cmd) return cmd_sweep(cfg, opt, out_dir);
        if (*asym_cmd) return cmd_asymscan(cfg, opt, out_dir);
        if (*bound_cmd) return cmd_bound(cfg, opt, out_dir);
        if (*multi_cmd) return cmd_multipartite(cfg, opt, out_dir);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const PostSelectionImpossible& e) {
        std::cerr << "post-selection error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}
