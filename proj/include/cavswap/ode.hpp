#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>

#include "cavswap/errors.hpp"

namespace cavswap {

struct IntegrationOptions {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    double max_step = std::numeric_limits<double>::infinity();
    long max_steps = 4'000'000;
};

namespace detail {

// Scaled RMS norm over the flattened complex entries.
template <typename State>
double error_norm(const State& err, const State& y0, const State& y1, double atol, double rtol) {
    const auto* e = err.data();
    const auto* a = y0.data();
    const auto* b = y1.data();
    const long n = static_cast<long>(err.size());
    double acc = 0.0;
    for (long i = 0; i < n; ++i) {
        const double sc = atol + rtol * std::max(std::abs(a[i]), std::abs(b[i]));
        const double q = std::abs(e[i]) / sc;
        acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(n));
}

template <typename State>
double scaled_rms(const State& v, const State& ref, double atol, double rtol) {
    const auto* x = v.data();
    const auto* r = ref.data();
    const long n = static_cast<long>(v.size());
    double acc = 0.0;
    for (long i = 0; i < n; ++i) {
        const double sc = atol + rtol * std::abs(r[i]);
        const double q = std::abs(x[i]) / sc;
        acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(n));
}

} // namespace detail

// Dormand-Prince 5(4) with the standard quartic continuous extension.
// `report` must be sorted and contained in [t0, t1]; `observe(i, y)` is called
// once per report point, in order. Returns the state at t1.
template <typename State, typename Rhs, typename Observer>
State integrate_dopri5(Rhs&& rhs, State y, double t0, double t1, std::span<const double> report,
                       Observer&& observe, const IntegrationOptions& opt = {}) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                            a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    std::size_t next_report = 0;
    const double time_eps = 1e-12 * std::max({1.0, std::abs(t0), std::abs(t1)});
    while (next_report < report.size() && report[next_report] <= t0 + time_eps) {
        observe(next_report, y);
        ++next_report;
    }
    if (t1 <= t0 + time_eps) return y;

    double t = t0;
    State k1 = rhs(t, y);

    // Hairer's two-stage initial step size guess.
    double h;
    {
        const double span = t1 - t0;
        const double d0 = detail::scaled_rms(y, y, opt.abs_tol, opt.rel_tol);
        const double dd1 = detail::scaled_rms(k1, y, opt.abs_tol, opt.rel_tol);
        double h0 = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 * span : 0.01 * (d0 / dd1);
        h0 = std::min({h0, span, opt.max_step});
        State y_probe = y + h0 * k1;
        State f_probe = rhs(t + h0, y_probe);
        const double d2 =
            detail::scaled_rms(State(f_probe - k1), y, opt.abs_tol, opt.rel_tol) / h0;
        double h1;
        if (std::max(dd1, d2) <= 1e-15) {
            h1 = std::max(1e-6 * span, h0 * 1e-3);
        } else {
            h1 = std::pow(0.01 / std::max(dd1, d2), 0.2);
        }
        h = std::min({100.0 * h0, h1, span, opt.max_step});
    }

    long steps = 0;
    bool just_rejected = false;
    while (t < t1 - time_eps) {
        if (++steps > opt.max_steps)
            throw StepRejection("integrator exceeded the step budget");
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw StepRejection("integrator step size underflow");
        const bool last = (t + h >= t1);
        if (last) h = t1 - t;

        const State k2 = rhs(t + c2 * h, State(y + h * (a21 * k1)));
        const State k3 = rhs(t + c3 * h, State(y + h * (a31 * k1 + a32 * k2)));
        const State k4 = rhs(t + c4 * h, State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
        const State k5 =
            rhs(t + c5 * h, State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
        const State k6 = rhs(
            t + h, State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
        State y_new = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        const State k7 = rhs(t + h, y_new);

        const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double err_norm = detail::error_norm(err, y, y_new, opt.abs_tol, opt.rel_tol);

        if (err_norm <= 1.0) {
            // dense output over (t, t+h]
            if (next_report < report.size() && report[next_report] <= t + h + time_eps) {
                const State ydiff = y_new - y;
                const State r3 = State(h * k1 - ydiff);
                const State r4 = State(ydiff - h * k7 - r3);
                const State r5 = State(
                    h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7));
                while (next_report < report.size() && report[next_report] <= t + h + time_eps) {
                    const double th = std::clamp((report[next_report] - t) / h, 0.0, 1.0);
                    const State u = y + th * (ydiff + (1.0 - th) * (r3 + th * (r4 + (1.0 - th) * r5)));
                    observe(next_report, u);
                    ++next_report;
                }
            }
            t += h;
            y = y_new;
            k1 = k7;  // FSAL
            const double facmax = just_rejected ? 1.0 : 5.0;
            h *= std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, facmax);
            h = std::min(h, opt.max_step);
            just_rejected = false;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
            just_rejected = true;
        }
    }
    // flush any remaining report points that coincide with t1
    while (next_report < report.size()) {
        observe(next_report, y);
        ++next_report;
    }
    return y;
}

} // namespace cavswap
