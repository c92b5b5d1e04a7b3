#include "cavswap/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cavswap/errors.hpp"

namespace cavswap {

namespace {

double asym_peak(const AsymmetricGaussian& p) {
    // sqrt(r) = sigma_fall / sigma_rise, peak = 2*omega0 / (1 + sqrt(r))
    return 2.0 * p.omega0 / (1.0 + p.sigma_fall / p.sigma_rise);
}

double gauss(double t, double tc, double sigma) {
    const double x = (t - tc) / sigma;
    return std::exp(-0.5 * x * x);
}

// Linear interpolation on the sample table, zero outside the range.
cplx table_eval(const TabulatedPulse& p, double t) {
    if (p.times.empty()) return 0.0;
    if (t < p.times.front() || t > p.times.back()) return 0.0;
    auto it = std::upper_bound(p.times.begin(), p.times.end(), t);
    if (it == p.times.begin()) return p.amps.front();
    if (it == p.times.end()) return p.amps.back();
    const std::size_t hi = static_cast<std::size_t>(it - p.times.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - p.times[lo]) / (p.times[hi] - p.times[lo]);
    return p.amps[lo] * (1.0 - w) + p.amps[hi] * w;
}

cplx table_slope(const TabulatedPulse& p, double t) {
    if (p.times.size() < 2) return 0.0;
    if (t < p.times.front() || t > p.times.back()) return 0.0;
    auto it = std::upper_bound(p.times.begin(), p.times.end(), t);
    std::size_t hi = (it == p.times.end()) ? p.times.size() - 1
                                           : static_cast<std::size_t>(it - p.times.begin());
    if (hi == 0) hi = 1;
    const std::size_t lo = hi - 1;
    return (p.amps[hi] - p.amps[lo]) / (p.times[hi] - p.times[lo]);
}

} // namespace

cplx eval_pulse(const PulsePolicy& policy, double t) {
    return std::visit(
        [t](const auto& p) -> cplx {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SymmetricGaussian>) {
                return p.omega0 * gauss(t, p.t_center, p.sigma);
            } else if constexpr (std::is_same_v<T, AsymmetricGaussian>) {
                const double sigma = (t <= p.t_center) ? p.sigma_rise : p.sigma_fall;
                return asym_peak(p) * gauss(t, p.t_center, sigma);
            } else {
                return table_eval(p, t);
            }
        },
        policy);
}

cplx eval_pulse_derivative(const PulsePolicy& policy, double t) {
    return std::visit(
        [t](const auto& p) -> cplx {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SymmetricGaussian>) {
                const double s2 = p.sigma * p.sigma;
                return -p.omega0 * (t - p.t_center) / s2 * gauss(t, p.t_center, p.sigma);
            } else if constexpr (std::is_same_v<T, AsymmetricGaussian>) {
                const double sigma = (t <= p.t_center) ? p.sigma_rise : p.sigma_fall;
                return -asym_peak(p) * (t - p.t_center) / (sigma * sigma) *
                       gauss(t, p.t_center, sigma);
            } else {
                return table_slope(p, t);
            }
        },
        policy);
}

double pulse_area(const PulsePolicy& policy) {
    constexpr double inv_sqrt_2pi = 0.3989422804014326779;
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SymmetricGaussian>) {
                return p.omega0 * p.sigma;
            } else if constexpr (std::is_same_v<T, AsymmetricGaussian>) {
                // Integral = peak * sqrt(pi/2) * (sigma_rise + sigma_fall); with the
                // peak rescaling this collapses to omega0 * sigma_rise.
                return p.omega0 * p.sigma_rise;
            } else {
                if (p.times.size() < 2) return 0.0;
                cplx integral = 0.0;
                for (std::size_t i = 0; i + 1 < p.times.size(); ++i) {
                    integral += 0.5 * (p.amps[i] + p.amps[i + 1]) *
                                (p.times[i + 1] - p.times[i]);
                }
                return integral.real() * inv_sqrt_2pi;
            }
        },
        policy);
}

double pulse_width(const PulsePolicy& policy) {
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SymmetricGaussian>) {
                return p.sigma;
            } else if constexpr (std::is_same_v<T, AsymmetricGaussian>) {
                return std::max(p.sigma_rise, p.sigma_fall);
            } else {
                if (p.times.size() < 2) return 1.0;
                return 0.5 * (p.times.back() - p.times.front());
            }
        },
        policy);
}

double peak_rabi(const PulsePolicy& policy) {
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SymmetricGaussian>) {
                return std::abs(p.omega0);
            } else if constexpr (std::is_same_v<T, AsymmetricGaussian>) {
                return std::abs(asym_peak(p));
            } else {
                double m = 0.0;
                for (const auto& a : p.amps) m = std::max(m, std::abs(a));
                return m;
            }
        },
        policy);
}

double pulse_center(const PulsePolicy& policy) {
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, TabulatedPulse>) {
                if (p.times.empty()) return 0.0;
                return 0.5 * (p.times.front() + p.times.back());
            } else {
                return p.t_center;
            }
        },
        policy);
}

void validate_pulse(const PulsePolicy& policy) {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SymmetricGaussian>) {
                if (!(p.sigma > 0.0)) throw ConfigError("pulse: sigma must be > 0");
            } else if constexpr (std::is_same_v<T, AsymmetricGaussian>) {
                if (!(p.sigma_rise > 0.0) || !(p.sigma_fall > 0.0))
                    throw ConfigError("pulse: sigma1 and sigma2 must be > 0");
            } else {
                if (p.times.size() != p.amps.size())
                    throw ConfigError("pulse: sample times and amplitudes differ in length");
                if (p.times.size() < 2)
                    throw ConfigError("pulse: tabulated shape needs at least two samples");
                for (std::size_t i = 0; i + 1 < p.times.size(); ++i)
                    if (!(p.times[i] < p.times[i + 1]))
                        throw ConfigError("pulse: sample times must be strictly increasing");
            }
        },
        policy);
}

} // namespace cavswap
