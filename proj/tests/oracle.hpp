// Test-only reference: the Lindblad equation on the full two-subsystem space
// (four atomic levels {u, e, g, x} tensor cavity photon numbers {0, 1}),
// integrated with a plain fixed-step RK4. Deliberately shares no code with
// the reduced 4x4 engine so truncation and integrator errors cannot cancel.
#pragma once

#include <Eigen/Dense>
#include <complex>

#include "cavswap/model.hpp"
#include "cavswap/pulse.hpp"

namespace oracle {

using cavswap::cplx;
using cavswap::PulsePolicy;
using cavswap::SystemParams;
using M8 = Eigen::Matrix<cplx, 8, 8>;

struct FullSpaceResult {
    double p_ex = 0.0;      // 2*kappa integral of <a^+ a>
    double g0_final = 0.0;  // population of |g,0> at the end
};

// basis index: 2*atom + photon with atoms ordered u, e, g, x
inline FullSpaceResult integrate_full_lindblad(const SystemParams& params,
                                               const PulsePolicy& pulse, double t_end,
                                               double step) {
    M8 proj_u = M8::Zero(), proj_e = M8::Zero(), flip_ue = M8::Zero(), flip_xe = M8::Zero(),
       photon = M8::Zero(), number = M8::Zero();
    for (int n = 0; n < 2; ++n) {
        proj_u(0 + n, 0 + n) = 1.0;
        proj_e(2 + n, 2 + n) = 1.0;
        flip_ue(0 + n, 2 + n) = 1.0;  // |u><e|
        flip_xe(6 + n, 2 + n) = 1.0;  // |x><e|
    }
    for (int a = 0; a < 4; ++a) {
        photon(2 * a + 0, 2 * a + 1) = 1.0;  // annihilation
        number(2 * a + 1, 2 * a + 1) = 1.0;
    }
    // g (|e><g| a + |g><e| a^+): the |e0><g1| block and its conjugate
    M8 couple = M8::Zero();
    couple(2 + 0, 4 + 1) = 1.0;  // <e0| ... |g1>
    couple += couple.adjoint().eval();

    const double k2 = 2.0 * params.kappa;
    const double gu2 = 2.0 * params.gamma_u;
    const double gg2 = 2.0 * params.gamma_g;

    // constant pieces of -i H - (1/2) sum L^+L
    const M8 damp = -0.5 * (k2 * number + (gu2 + gg2) * proj_e);
    const M8 h_static = params.delta_u * proj_u + params.delta_e * proj_e + params.g * couple;

    auto rhs = [&](double t, const M8& rho) -> M8 {
        const cplx omega = cavswap::eval_pulse(pulse, t);
        M8 h = h_static;
        for (int n = 0; n < 2; ++n) {
            h(0 + n, 2 + n) += omega;
            h(2 + n, 0 + n) += std::conj(omega);
        }
        const M8 drift = cplx(0, -1) * h + damp;
        M8 d = drift * rho + rho * drift.adjoint();
        d += k2 * photon * rho * photon.adjoint();
        d += gu2 * flip_ue * rho * flip_ue.adjoint();
        if (gg2 > 0.0) d += gg2 * flip_xe * rho * flip_xe.adjoint();
        return d;
    };

    M8 rho = M8::Zero();
    rho(0, 0) = 1.0;  // |u,0>

    const long steps = std::max(2L, static_cast<long>(std::ceil(t_end / step)));
    const double h = t_end / static_cast<double>(steps);
    double integral = 0.0;
    double occupancy_prev = (number * rho).trace().real();
    for (long s = 0; s < steps; ++s) {
        const double t = h * static_cast<double>(s);
        const M8 k1 = rhs(t, rho);
        const M8 k2m = rhs(t + 0.5 * h, M8(rho + 0.5 * h * k1));
        const M8 k3 = rhs(t + 0.5 * h, M8(rho + 0.5 * h * k2m));
        const M8 k4 = rhs(t + h, M8(rho + h * k3));
        rho += h / 6.0 * (k1 + 2.0 * k2m + 2.0 * k3 + k4);
        const double occupancy = (number * rho).trace().real();
        integral += 0.5 * h * (occupancy_prev + occupancy);
        occupancy_prev = occupancy;
    }
    FullSpaceResult res;
    res.g0_final = rho(4, 4).real();
    res.p_ex = k2 * integral;
    return res;
}

} // namespace oracle
