#include "cavswap/master.hpp"

#include <cmath>
#include <stdexcept>

#include "cavswap/errors.hpp"
#include "cavswap/quadrature.hpp"

namespace cavswap {

std::vector<double> UniformGrid::times() const {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = time(i);
    return out;
}

double DensityTrajectory::final_residual() const {
    const int i = size() - 1;
    return rho22(i) + rho33(i);
}

namespace {

Eigen::Matrix4cd embed4(const Eigen::Matrix3cd& h3) {
    Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
    h.topLeftCorner<3, 3>() = h3;
    return h;
}

// Slowest decay rate of the {|g1>, |e0>} manifold with the pump off; sets the
// ringdown part of the integration window.
double ringdown_rate(const SystemParams& p) {
    const double gt = p.gamma_u + p.gamma_g;
    const cplx tr(0.0, -(p.kappa + gt));
    const cplx det = cplx(0, -p.kappa) * cplx(0, -gt) - cplx(p.g * p.g);
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    const double r1 = -(0.5 * (tr + disc)).imag();
    const double r2 = -(0.5 * (tr - disc)).imag();
    double slow = std::numeric_limits<double>::infinity();
    if (r1 > 1e-9) slow = std::min(slow, r1);
    if (r2 > 1e-9) slow = std::min(slow, r2);
    if (!std::isfinite(slow)) slow = std::max({p.kappa, gt, 1e-9});
    return slow;
}

} // namespace

double initial_window(const SystemParams& params, const PulsePolicy& policy) {
    const double width = pulse_width(policy);
    const double tc = pulse_center(policy);
    return tc + std::max(10.0 * width, 10.0 / ringdown_rate(params));
}

UniformGrid make_grid(const SystemParams& params, const PulsePolicy& policy, double window,
                      const GridPolicy& pol) {
    const double rate = std::max({params.g, params.kappa, params.gamma_u + params.gamma_g,
                                  std::abs(params.delta_u), std::abs(params.delta_e), 1e-9});
    const double shortest = std::max(std::min(pulse_width(policy), 1.0 / rate), 1e-12);
    const double target = pol.points_per_feature * window / shortest;
    int n = pol.base_points;
    if (target > n) n = static_cast<int>(std::ceil(target));
    n = std::min(n, pol.max_points);
    UniformGrid grid;
    grid.t0 = 0.0;
    grid.n = n;
    grid.dt = window / (n - 1);
    return grid;
}

DensityTrajectory evolve_density(const SystemParams& params, const PulsePolicy& policy,
                                 const UniformGrid& grid, const IntegrationOptions& opt) {
    if (grid.n < 2) throw ConfigError("grid needs at least two points");

    DensityTrajectory traj;
    traj.t = grid.times();
    traj.dt = grid.dt;
    traj.rho.resize(static_cast<std::size_t>(grid.n));

    const double two_gu = 2.0 * params.gamma_u;
    const double two_kappa = 2.0 * params.kappa;
    auto rhs = [&](double t, const Eigen::Matrix4cd& rho) -> Eigen::Matrix4cd {
        const Eigen::Matrix4cd h = embed4(effective_hamiltonian(params, policy, t));
        const Eigen::Matrix4cd hr = h * rho;
        Eigen::Matrix4cd d = cplx(0.0, -1.0) * (hr - hr.adjoint().eval());
        d(0, 0) += two_gu * rho(2, 2);    // recycling |e0> -> |u0>
        d(3, 3) += two_kappa * rho(1, 1); // photon release |g1> -> |g0>
        return d;
    };

    Eigen::Matrix4cd rho0 = Eigen::Matrix4cd::Zero();
    rho0(0, 0) = 1.0;

    integrate_dopri5(
        rhs, rho0, grid.t0, grid.t_end(), std::span<const double>(traj.t),
        [&](std::size_t i, const Eigen::Matrix4cd& y) { traj.rho[i] = y; }, opt);
    return traj;
}

DynamicsResult solve_dynamics(const SystemParams& params, const PulsePolicy& policy,
                              const GridPolicy& pol, const IntegrationOptions& opt) {
    const double peak = peak_rabi(policy);
    double window = initial_window(params, policy);
    DynamicsResult res;
    for (int ext = 0; ext <= pol.max_extensions; ++ext) {
        res.grid = make_grid(params, policy, window, pol);
        res.traj = evolve_density(params, policy, res.grid, opt);
        res.residual = res.traj.final_residual();
        res.extensions = ext;
        const bool pump_off =
            peak == 0.0 || std::abs(eval_pulse(policy, res.grid.t_end())) <= 1e-6 * peak;
        if (res.residual < pol.residual_tol && pump_off) return res;
        window *= pol.window_growth;
    }
    throw NonConvergence("residual population " + std::to_string(res.residual) +
                         " above tolerance at the maximum window");
}

double photon_emission_probability(const DensityTrajectory& traj, const SystemParams& params) {
    std::vector<double> p22(static_cast<std::size_t>(traj.size()));
    for (int i = 0; i < traj.size(); ++i) p22[static_cast<std::size_t>(i)] = traj.rho22(i);
    return 2.0 * params.kappa * simpson(p22, traj.dt);
}

double photon_emission_probability_trapezoid(const DensityTrajectory& traj,
                                             const SystemParams& params) {
    std::vector<double> p22(static_cast<std::size_t>(traj.size()));
    for (int i = 0; i < traj.size(); ++i) p22[static_cast<std::size_t>(i)] = traj.rho22(i);
    return 2.0 * params.kappa * trapezoid(p22, traj.dt);
}

double pure_photon_probability(const SystemParams& params, const PulsePolicy& policy,
                               const UniformGrid& grid, const IntegrationOptions& opt) {
    auto rhs = [&](double t, const Eigen::Vector3cd& v) -> Eigen::Vector3cd {
        return cplx(0.0, -1.0) * (effective_hamiltonian(params, policy, t) * v);
    };
    Eigen::Vector3cd psi0(1.0, 0.0, 0.0);
    std::vector<double> p22(static_cast<std::size_t>(grid.n), 0.0);
    const auto times = grid.times();
    integrate_dopri5(
        rhs, psi0, grid.t0, grid.t_end(), std::span<const double>(times),
        [&](std::size_t i, const Eigen::Vector3cd& v) { p22[i] = std::norm(v(1)); }, opt);
    return 2.0 * params.kappa * simpson(p22, grid.dt);
}

double cumulative_emission(const DensityTrajectory& traj, double t) {
    const double t0 = traj.t.front();
    const double t1 = traj.t.back();
    const double eps = 1e-9 * std::max(1.0, std::abs(t1));
    if (t < t0 - eps || t > t1 + eps)
        throw std::out_of_range("cumulative_emission: time outside the trajectory grid");
    if (t <= t0) return traj.rho44(0);
    if (t >= t1) return traj.rho44(traj.size() - 1);
    const double x = (t - t0) / traj.dt;
    const int lo = std::min(static_cast<int>(x), traj.size() - 2);
    const double w = x - lo;
    return (1.0 - w) * traj.rho44(lo) + w * traj.rho44(lo + 1);
}

} // namespace cavswap
