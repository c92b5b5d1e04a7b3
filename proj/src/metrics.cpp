#include "cavswap/metrics.hpp"

#include <cmath>

#include "cavswap/errors.hpp"
#include "cavswap/quadrature.hpp"

namespace cavswap {

cplx correlation_J(const TwoTimeCorrelation& corr1, const TwoTimeCorrelation& corr2, double p1,
                   double p2, const SystemParams& params) {
    if (p1 * p2 < 1e-12)
        throw EmissionZero("no heralds: p1*p2 below 1e-12, normalized waveform undefined");
    const int n = corr1.size();
    if (corr2.size() != n || std::abs(corr2.dt - corr1.dt) > 1e-12 * corr1.dt)
        throw ConfigError("correlation_J: the two correlations must share one grid");

    const auto w = trapezoid_weights(n, corr1.dt);
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i) {
        cplx row = 0.0;
        for (int j = 0; j < n; ++j)
            row += w[static_cast<std::size_t>(j)] *
                   (std::conj(corr1.values(i, j)) * corr2.values(i, j));
        acc += w[static_cast<std::size_t>(i)] * row;
    }
    const double k = params.kappa;
    return 4.0 * k * k / (p1 * p2) * acc;
}

double bell_fidelity(cplx j) { return 0.5 * (1.0 + j.real()); }

double entanglement_rate(double p_ex) { return 0.5 * p_ex * p_ex; }

BoundReport analytic_bound(const SystemParams& params, double p_ex,
                           const TwoTimeCorrelation& corr) {
    if (p_ex < 1e-12) throw EmissionZero("analytic_bound: p_ex below 1e-12");
    const double c = params.cooperativity();
    // gamma_u = 0 gives C = inf: C/(C+1) -> 1 and 1/(C+1) -> 0
    const double c_ratio = std::isinf(c) ? 1.0 : c / (c + 1.0);
    const double inv_c1 = std::isinf(c) ? 0.0 : 1.0 / (c + 1.0);
    const double k = params.kappa;
    const double p2 = p_ex * p_ex;
    const int n = corr.size();
    const double dt = corr.dt;
    const auto w = trapezoid_weights(n, dt);

    BoundReport rep;
    rep.truncated_bound = c_ratio;
    rep.first_term = 2.0 * c_ratio * (1.0 / p_ex - 0.5);

    double diag = 0.0;
    for (int i = 0; i < n; ++i) {
        const double l2 = corr.values(i, i).real();
        diag += w[static_cast<std::size_t>(i)] * l2 * l2;
    }
    rep.term_lambda_diag = 8.0 * k / p2 * inv_c1 * diag;

    // d lambda_2/dt' along each row, one-sided at the diagonal and the end
    double deriv = 0.0;
    for (int i = 0; i < n; ++i) {
        const int m = n - i;
        if (m < 3) continue;
        double inner = 0.0;
        for (int j = i; j < n; ++j) {
            cplx d;
            if (j == i) {
                d = (-3.0 * corr.values(i, j) + 4.0 * corr.values(i, j + 1) -
                     corr.values(i, j + 2)) /
                    (2.0 * dt);
            } else if (j == n - 1) {
                d = (3.0 * corr.values(i, j) - 4.0 * corr.values(i, j - 1) +
                     corr.values(i, j - 2)) /
                    (2.0 * dt);
            } else {
                d = (corr.values(i, j + 1) - corr.values(i, j - 1)) / (2.0 * dt);
            }
            const double wj = (j == i || j == n - 1) ? 0.5 * dt : dt;
            inner += wj * std::norm(d);
        }
        deriv += w[static_cast<std::size_t>(i)] * inner;
    }
    rep.term_derivative = 8.0 / p2 * inv_c1 * deriv;

    double resid = 0.0;
    for (int i = 0; i < n; ++i)
        resid += w[static_cast<std::size_t>(i)] * std::norm(corr.lambda_final(i));
    rep.term_residual = 4.0 * k * c_ratio / p2 * resid;

    rep.bound_value =
        rep.first_term + rep.term_lambda_diag - rep.term_derivative - rep.term_residual;
    return rep;
}

SwapResult evaluate_swap(const SystemParams& params, const TwoTimeCorrelation& corr,
                         double p_ex) {
    if (p_ex * p_ex < 1e-12)
        throw EmissionZero("no heralds: p_ex^2 below 1e-12, normalized waveform undefined");
    SwapResult res;
    res.p_ex_1 = p_ex;
    res.p_ex_2 = p_ex;
    const double k = params.kappa;
    res.j_avg = 4.0 * k * k / (p_ex * p_ex) * norm_squared_double_integral(corr);
    res.fidelity = bell_fidelity(res.j_avg);
    res.p_ent = entanglement_rate(p_ex);
    return res;
}

} // namespace cavswap
