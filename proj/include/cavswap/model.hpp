#pragma once

#include <Eigen/Dense>
#include <span>

#include "cavswap/pulse.hpp"

namespace cavswap {

// Physical rates and detunings of one atom-cavity node, in units of gamma_u = 1
// (Table-style convention). kappa is the cavity field decay rate: the photon
// number decays at 2*kappa, and P_ex = 2*kappa Integral rho_g1g1 dt.
struct SystemParams {
    double g = 1.0;        // atom-cavity coupling
    double kappa = 1.0;    // cavity field decay
    double gamma_u = 1.0;  // re-excitable spontaneous decay |e> -> |u>
    double gamma_g = 0.0;  // non-re-excitable decay out of |e>
    double delta_u = 0.0;  // one-photon detuning
    double delta_e = 0.0;  // two-photon detuning

    double delta_p() const { return delta_e - delta_u; }
    double delta_c() const { return delta_e; }

    // g^2/(kappa*gamma_u); +inf when gamma_u == 0 (callers handle that limit).
    double cooperativity() const;

    // Enforces g > 0, kappa > 0, gamma_u >= 0, gamma_g >= 0 (ConfigError).
    void validate() const;
};

// Non-Hermitian effective Hamiltonian on the basis {|u0>, |g1>, |e0>}:
//
//   [ delta_u      0              Omega(t)                       ]
//   [ 0            -i*kappa       g                              ]
//   [ Omega*(t)    g              delta_e - i*(gamma_u+gamma_g)  ]
//
// The |g0> sink completes the 4x4 picture with a zero row/column.
Eigen::Matrix3cd effective_hamiltonian(const SystemParams& params, const PulsePolicy& policy,
                                       double t);

// Diagnostics for the three adiabatic-passage conditions. Each ratio is
// left-hand side over right-hand side; a condition is satisfied when < 1.
struct AdiabaticityReport {
    double pulse_ratio = 0.0;           // max_t |2 g dOmega/dt / (Omega^2+g^2)| / gap
    double drive_ratio = 0.0;           // g / max Omega
    double coupling_ratio = 0.0;        // max(kappa, gamma_u) / g
    bool pulse_ok = false;
    bool drive_ok = false;
    bool coupling_ok = false;
};

AdiabaticityReport adiabaticity_report(const SystemParams& params, const PulsePolicy& policy,
                                       std::span<const double> grid);

} // namespace cavswap
