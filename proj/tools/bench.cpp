// Compares the serial reference against the OpenMP kernels: the two-time
// correlation grid and a small constant-area sweep.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cavswap/qrt.hpp"
#include "cavswap/sweep.hpp"

using namespace cavswap;

namespace {

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

} // namespace

int main(int argc, char** argv) {
    int grid_points = 600;
    if (argc > 1) grid_points = std::atoi(argv[1]);

    SystemParams params;  // intermediate regime, C = 1
    params.g = 1.0;
    params.kappa = 1.0;
    params.gamma_u = 1.0;

    const double sigma = 5.0;
    const double area = 3.0;
    const PulsePolicy pulse =
        SymmetricGaussian{area / sigma, sigma, default_pulse_center(sigma)};

    GridPolicy gp;
    gp.base_points = grid_points;
    gp.max_points = grid_points;
    const DynamicsResult dyn = solve_dynamics(params, pulse, gp);
    std::printf("grid: %d points, window %.1f\n", dyn.grid.n, dyn.grid.t_end());

#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif

    double t0 = now();
    const TwoTimeCorrelation serial = two_time_correlation_serial(params, pulse, dyn.traj);
    const double t_serial = now() - t0;

    t0 = now();
    const TwoTimeCorrelation parallel = two_time_correlation(params, pulse, dyn.traj);
    const double t_parallel = now() - t0;

    double max_diff = 0.0;
    for (int i = 0; i < serial.size(); ++i)
        for (int j = 0; j < serial.size(); ++j)
            max_diff = std::max(max_diff, std::abs(serial.values(i, j) - parallel.values(i, j)));

    std::printf("two-time grid  serial   %8.3f s\n", t_serial);
    std::printf("two-time grid  %d-thread %8.3f s  (speedup %.2fx, max |diff| %.1e)\n", threads,
                t_parallel, t_serial / t_parallel, max_diff);

    // small sweep: per-point parallelism
    SolverOptions opt;
    opt.grid.base_points = 300;
    opt.grid.max_points = 300;
    const double areas[] = {0.7, 3.0};
    SigmaRange sigmas{0.2, 5.0, 6, true};

    t0 = now();
#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    auto curves1 = run_tradeoff_sweep(params, "bench", areas, sigmas, opt);
    const double t_sweep1 = now() - t0;

#ifdef _OPENMP
    omp_set_num_threads(threads);
#endif
    t0 = now();
    auto curvesN = run_tradeoff_sweep(params, "bench", areas, sigmas, opt);
    const double t_sweepN = now() - t0;

    double sweep_diff = 0.0;
    for (std::size_t c = 0; c < curves1.size(); ++c)
        for (std::size_t p = 0; p < curves1[c].points.size(); ++p)
            sweep_diff = std::max(sweep_diff, std::abs(curves1[c].points[p].fidelity -
                                                       curvesN[c].points[p].fidelity));

    std::printf("sweep (12 pts) serial   %8.3f s\n", t_sweep1);
    std::printf("sweep (12 pts) %d-thread %8.3f s  (speedup %.2fx, max |diff| %.1e)\n", threads,
                t_sweepN, t_sweep1 / t_sweepN, sweep_diff);
    return 0;
}
