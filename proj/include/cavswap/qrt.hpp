#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cavswap/master.hpp"

namespace cavswap {

// Two-time cavity field correlation G(t, t') = <a_c^+(t) a_c(t')> on the
// trajectory grid. The upper triangle (t' >= t) is propagated through the
// regression equation d/dt' lambda = -i H3(t') lambda from
// lambda(t, t) = (rho12, rho22, rho23*); the lower triangle is filled by
// conjugate symmetry. The diagonal equals rho22(t) by construction.
struct TwoTimeCorrelation {
    std::vector<double> t;
    double dt = 0.0;
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> values;
    // lambda_1(t_i, t_end): residual cavity amplitude entering the analytic bound
    Eigen::VectorXcd lambda_final;

    int size() const { return static_cast<int>(t.size()); }
};

// Parallel over outer times (OpenMP when available); rows are independent and
// written once, so the result does not depend on the schedule.
TwoTimeCorrelation two_time_correlation(const SystemParams& params, const PulsePolicy& policy,
                                        const DensityTrajectory& traj,
                                        const IntegrationOptions& opt = {});

// Single-threaded reference used by the tests and the benchmark.
TwoTimeCorrelation two_time_correlation_serial(const SystemParams& params,
                                               const PulsePolicy& policy,
                                               const DensityTrajectory& traj,
                                               const IntegrationOptions& opt = {});

// Integral |G(t,t')|^2 dt dt' by the 2-D trapezoid rule on the grid.
double norm_squared_double_integral(const TwoTimeCorrelation& corr);

} // namespace cavswap
