#pragma once

#include <complex>

#include "cavswap/qrt.hpp"

namespace cavswap {

struct SwapResult {
    double p_ex_1 = 0.0;
    double p_ex_2 = 0.0;
    cplx j_avg = 0.0;
    double fidelity = 0.0;  // (1 + Re J)/2
    double p_ent = 0.0;     // p_ex_1 * p_ex_2 / 2
};

// Terms of the cooperativity inequality
//   <J> <= 2C/(C+1) (1/P - 1/2) + Integral 8k/(P^2(C+1)) |l2(t,t)|^2 dt
//          - Int Int_{t'>t} 8/((C+1)P^2) |dl2/dt'|^2 - 4kC/(P^2(C+1)) Int |l1(t,inf)|^2.
// All four terms are non-negative; bound_value is their signed sum.
struct BoundReport {
    double first_term = 0.0;
    double term_lambda_diag = 0.0;
    double term_derivative = 0.0;
    double term_residual = 0.0;
    double bound_value = 0.0;
    double truncated_bound = 0.0;  // C/(C+1)
};

// <J> = 4 kappa^2 Int Int G1*(t,t') G2(t,t') dt dt' / (p1 p2). For a single
// source passed twice this reduces to the |G|^2 form. Normalize p1, p2 with
// the trapezoid emission probability so the pure-photon limit lands on 1
// exactly. Throws EmissionZero when p1*p2 < 1e-12.
cplx correlation_J(const TwoTimeCorrelation& corr1, const TwoTimeCorrelation& corr2, double p1,
                   double p2, const SystemParams& params);

double bell_fidelity(cplx j);

// P_ent = p_ex^2 / 2 (the 1/2 is the linear-optics Bell measurement ceiling).
double entanglement_rate(double p_ex);

BoundReport analytic_bound(const SystemParams& params, double p_ex,
                           const TwoTimeCorrelation& corr);

// Identical-source pipeline: J from the |G|^2 kernel, F, and the rate.
SwapResult evaluate_swap(const SystemParams& params, const TwoTimeCorrelation& corr,
                         double p_ex);

} // namespace cavswap
