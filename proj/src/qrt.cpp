#include "cavswap/qrt.hpp"

#include "cavswap/quadrature.hpp"

namespace cavswap {

namespace {

void propagate_row(const SystemParams& params, const PulsePolicy& policy,
                   const DensityTrajectory& traj, int i, TwoTimeCorrelation& corr,
                   const IntegrationOptions& opt) {
    const int n = traj.size();
    const Eigen::Matrix4cd& rho = traj.rho[static_cast<std::size_t>(i)];
    Eigen::Vector3cd lam(rho(0, 1), rho(1, 1), std::conj(rho(1, 2)));

    corr.values(i, i) = cplx(traj.rho22(i), 0.0);
    if (i == n - 1) {
        corr.lambda_final(i) = lam(0);
        return;
    }

    auto rhs = [&](double t, const Eigen::Vector3cd& v) -> Eigen::Vector3cd {
        return cplx(0.0, -1.0) * (effective_hamiltonian(params, policy, t) * v);
    };
    const std::span<const double> report(traj.t.data() + i + 1,
                                         static_cast<std::size_t>(n - i - 1));
    const Eigen::Vector3cd last = integrate_dopri5(
        rhs, lam, traj.t[static_cast<std::size_t>(i)], traj.t.back(), report,
        [&](std::size_t k, const Eigen::Vector3cd& v) {
            corr.values(i, i + 1 + static_cast<int>(k)) = v(1);
        },
        opt);
    corr.lambda_final(i) = last(0);
}

TwoTimeCorrelation run(const SystemParams& params, const PulsePolicy& policy,
                       const DensityTrajectory& traj, const IntegrationOptions& opt,
                       bool parallel) {
    TwoTimeCorrelation corr;
    corr.t = traj.t;
    corr.dt = traj.dt;
    const int n = traj.size();
    corr.values.setZero(n, n);
    corr.lambda_final.setZero(n);

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) propagate_row(params, policy, traj, i, corr, opt);
    } else {
        for (int i = 0; i < n; ++i) propagate_row(params, policy, traj, i, corr, opt);
    }

    // lower triangle from <a^+(t)a(t')>* = <a^+(t')a(t)>
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) corr.values(i, j) = std::conj(corr.values(j, i));
    return corr;
}

} // namespace

TwoTimeCorrelation two_time_correlation(const SystemParams& params, const PulsePolicy& policy,
                                        const DensityTrajectory& traj,
                                        const IntegrationOptions& opt) {
    return run(params, policy, traj, opt, true);
}

TwoTimeCorrelation two_time_correlation_serial(const SystemParams& params,
                                               const PulsePolicy& policy,
                                               const DensityTrajectory& traj,
                                               const IntegrationOptions& opt) {
    return run(params, policy, traj, opt, false);
}

double norm_squared_double_integral(const TwoTimeCorrelation& corr) {
    const int n = corr.size();
    const auto w = trapezoid_weights(n, corr.dt);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += w[static_cast<std::size_t>(j)] * std::norm(corr.values(i, j));
        acc += w[static_cast<std::size_t>(i)] * row;
    }
    return acc;
}

} // namespace cavswap
