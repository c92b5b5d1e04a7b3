#pragma once

#include <complex>
#include <variant>
#include <vector>

namespace cavswap {

using cplx = std::complex<double>;

// Pump pulse shapes. Rates and times are in units of gamma_u = 1 unless the
// configuration overrides the unit.
//
// Pulse area convention: S = (1/sqrt(2*pi)) * Integral Omega(t) dt.
// For the symmetric Gaussian S = omega0 * sigma. For the asymmetric Gaussian
// the peak is rescaled to 2*omega0/(1 + sigma_fall/sigma_rise) so that
// S = omega0 * sigma_rise holds for every width pair.

struct SymmetricGaussian {
    double omega0 = 0.0;  // peak Rabi frequency
    double sigma = 1.0;   // standard deviation
    double t_center = 0.0;
};

struct AsymmetricGaussian {
    double omega0 = 0.0;      // area-normalization amplitude, not the actual peak
    double sigma_rise = 1.0;  // width of the t <= t_center branch
    double sigma_fall = 1.0;  // width of the t >= t_center branch
    double t_center = 0.0;
};

// Piecewise-linear complex envelope; zero outside the sampled range.
struct TabulatedPulse {
    std::vector<double> times;  // strictly increasing
    std::vector<cplx> amps;
};

using PulsePolicy = std::variant<SymmetricGaussian, AsymmetricGaussian, TabulatedPulse>;

// Omega(t)
cplx eval_pulse(const PulsePolicy& policy, double t);

// dOmega/dt; analytic for the Gaussian shapes, piecewise-constant slope for tables
cplx eval_pulse_derivative(const PulsePolicy& policy, double t);

// S = (1/sqrt(2*pi)) * Integral Omega(t) dt (closed form for Gaussians,
// trapezoid on the samples for tables)
double pulse_area(const PulsePolicy& policy);

// Largest width scale of the envelope; used for window and grid sizing.
double pulse_width(const PulsePolicy& policy);

// Maximum of |Omega(t)| over the envelope.
double peak_rabi(const PulsePolicy& policy);

double pulse_center(const PulsePolicy& policy);

// t_center placement that keeps Omega(0)/Omega_peak below 1e-5 so the
// initial condition rho(0) = |u0><u0| is clean.
inline double default_pulse_center(double width) { return 5.0 * width; }

// Throws ConfigError on non-positive widths or non-increasing sample times.
void validate_pulse(const PulsePolicy& policy);

} // namespace cavswap
