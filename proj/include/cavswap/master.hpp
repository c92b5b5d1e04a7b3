#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cavswap/model.hpp"
#include "cavswap/ode.hpp"
#include "cavswap/pulse.hpp"

namespace cavswap {

struct UniformGrid {
    double t0 = 0.0;
    double dt = 0.0;
    int n = 0;

    double time(int i) const { return t0 + dt * i; }
    double t_end() const { return time(n - 1); }
    std::vector<double> times() const;
};

// Window and resolution policy for the reporting grid. The window starts at
// t_c + max(10*width, 10/ringdown) and grows geometrically until the residual
// population outside the {|u0>, |g0>} sinks drops below residual_tol with the
// pump off. N targets points_per_feature samples per shortest timescale,
// clamped to [base_points, max_points].
struct GridPolicy {
    int base_points = 600;
    int max_points = 2048;
    double points_per_feature = 40.0;
    double residual_tol = 1e-6;
    double window_growth = 1.5;
    int max_extensions = 12;
};

// Time-sampled density matrix on the basis {|u0>, |g1>, |e0>, |g0>}.
// rho14 = rho24 = rho34 = 0 identically for this initial condition.
struct DensityTrajectory {
    std::vector<double> t;
    double dt = 0.0;
    std::vector<Eigen::Matrix4cd> rho;

    int size() const { return static_cast<int>(t.size()); }
    double rho22(int i) const { return rho[i](1, 1).real(); }
    double rho33(int i) const { return rho[i](2, 2).real(); }
    double rho44(int i) const { return rho[i](3, 3).real(); }
    // population outside the sinks at the final sample
    double final_residual() const;
};

// Integrates d(rho)/dt = -i(H rho - rho H^+) + 2*gamma_u |u0><e0| rho |e0><u0|
//                        + 2*kappa a rho a^+
// from rho(0) = |u0><u0| over the given grid.
DensityTrajectory evolve_density(const SystemParams& params, const PulsePolicy& policy,
                                 const UniformGrid& grid, const IntegrationOptions& opt = {});

struct DynamicsResult {
    UniformGrid grid;
    DensityTrajectory traj;
    double residual = 0.0;
    int extensions = 0;
};

// Chooses the window per GridPolicy, integrates, and extends the window until
// the residual criterion holds. Throws NonConvergence when the criterion is
// still unmet at the maximum window.
DynamicsResult solve_dynamics(const SystemParams& params, const PulsePolicy& policy,
                              const GridPolicy& policy_grid = {},
                              const IntegrationOptions& opt = {});

UniformGrid make_grid(const SystemParams& params, const PulsePolicy& policy, double window,
                      const GridPolicy& pol);
double initial_window(const SystemParams& params, const PulsePolicy& policy);

// P_ex = 2*kappa Integral rho22 dt (Simpson); agrees with rho44(final) to
// quadrature accuracy.
double photon_emission_probability(const DensityTrajectory& traj, const SystemParams& params);

// Same, with the trapezoid rule of the two-time integrals; used to normalize
// correlation functionals so that exact cancellations survive discretization.
double photon_emission_probability_trapezoid(const DensityTrajectory& traj,
                                             const SystemParams& params);

// P_0 = 2*kappa Integral |<g1|psi(t)>|^2 dt with psi evolving under the bare
// non-Hermitian Hamiltonian (no recycling term).
double pure_photon_probability(const SystemParams& params, const PulsePolicy& policy,
                               const UniformGrid& grid, const IntegrationOptions& opt = {});

// rho44(t): probability of having emitted by time t. Monotone non-decreasing.
// Throws std::out_of_range outside the grid.
double cumulative_emission(const DensityTrajectory& traj, double t);

} // namespace cavswap
