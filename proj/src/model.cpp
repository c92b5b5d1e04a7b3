#include "cavswap/model.hpp"

#include <cmath>
#include <limits>

#include "cavswap/errors.hpp"

namespace cavswap {

double SystemParams::cooperativity() const {
    if (gamma_u == 0.0) return std::numeric_limits<double>::infinity();
    return g * g / (kappa * gamma_u);
}

void SystemParams::validate() const {
    if (!(g > 0.0)) throw ConfigError("params: g must be > 0");
    if (!(kappa > 0.0)) throw ConfigError("params: kappa must be > 0");
    if (gamma_u < 0.0) throw ConfigError("params: gamma_u must be >= 0");
    if (gamma_g < 0.0) throw ConfigError("params: gamma_g must be >= 0");
    if (!std::isfinite(delta_u) || !std::isfinite(delta_e))
        throw ConfigError("params: detunings must be finite");
}

Eigen::Matrix3cd effective_hamiltonian(const SystemParams& params, const PulsePolicy& policy,
                                       double t) {
    const cplx omega = eval_pulse(policy, t);
    const cplx mi(0.0, -1.0);
    Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
    h(0, 0) = params.delta_u;
    h(0, 2) = omega;
    h(1, 1) = mi * params.kappa;
    h(1, 2) = params.g;
    h(2, 0) = std::conj(omega);
    h(2, 1) = params.g;
    h(2, 2) = cplx(params.delta_e, -(params.gamma_u + params.gamma_g));
    return h;
}

AdiabaticityReport adiabaticity_report(const SystemParams& params, const PulsePolicy& policy,
                                       std::span<const double> grid) {
    AdiabaticityReport rep;
    const double g = params.g;
    const double delta = params.delta_u;  // one-photon detuning; zero in all Table rows

    double worst = 0.0;
    double omega_max = 0.0;
    for (double t : grid) {
        const double omega = std::abs(eval_pulse(policy, t));
        const double domega = std::abs(eval_pulse_derivative(policy, t));
        omega_max = std::max(omega_max, omega);
        const double lhs = std::abs(2.0 * g * domega) / (omega * omega + g * g);
        const double root = std::sqrt(g * g + omega * omega + delta * delta);
        // both dressed-state gaps must stay large; use the smaller one
        const double rhs = 0.5 * std::min(std::abs(delta + root), std::abs(delta - root));
        if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
    }
    rep.pulse_ratio = worst;
    rep.drive_ratio = (omega_max > 0.0) ? g / omega_max
                                        : std::numeric_limits<double>::infinity();
    rep.coupling_ratio = std::max(params.kappa, params.gamma_u) / g;
    rep.pulse_ok = rep.pulse_ratio < 1.0;
    rep.drive_ok = rep.drive_ratio < 1.0;
    rep.coupling_ok = rep.coupling_ratio < 1.0;
    return rep;
}

} // namespace cavswap
