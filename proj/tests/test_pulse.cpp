#include <doctest.h>

#include <cmath>
#include <random>

#include "cavswap/errors.hpp"
#include "cavswap/pulse.hpp"

using namespace cavswap;

namespace {

// quadrature oracle for pulse areas, independent of the closed forms
double area_by_quadrature(const PulsePolicy& p, double lo, double hi, int n = 200000) {
    const double h = (hi - lo) / n;
    double acc = 0.5 * (eval_pulse(p, lo).real() + eval_pulse(p, hi).real());
    for (int i = 1; i < n; ++i) acc += eval_pulse(p, lo + h * i).real();
    return acc * h / std::sqrt(2.0 * M_PI);
}

} // namespace

TEST_CASE("symmetric gaussian evaluates the standard form") {
    const PulsePolicy p = SymmetricGaussian{1.0, 2.0, 0.0};
    CHECK(eval_pulse(p, 0.0).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_pulse(p, 2.0).real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
    CHECK(eval_pulse(p, -2.0).real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("asymmetric gaussian is continuous at the center with the fixed ratio convention") {
    const PulsePolicy p = AsymmetricGaussian{1.0, 4.0, 1.0, 0.0};
    const double left = eval_pulse(p, -1e-13).real();
    const double right = eval_pulse(p, 1e-13).real();
    // r = (sigma2/sigma1)^2 = 1/16 so the shared peak is 2/(1 + 1/4) = 1.6
    CHECK(left == doctest::Approx(1.6).epsilon(1e-9));
    CHECK(std::abs(left - right) < 1e-12);
    // the convention is pinned by the area staying omega0*sigma1
    CHECK(pulse_area(p) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(area_by_quadrature(p, -60.0, 20.0) == doctest::Approx(4.0).epsilon(1e-7));
}

TEST_CASE("pulse areas") {
    CHECK(pulse_area(SymmetricGaussian{1.5, 2.0, 0.0}) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(pulse_area(SymmetricGaussian{0.0, 5.0, 0.0}) == 0.0);
    // symmetric limit of the asymmetric shape reproduces the closed form
    const PulsePolicy p = AsymmetricGaussian{1.0, 2.0, 2.0, 0.0};
    CHECK(pulse_area(p) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(area_by_quadrature(p, -40.0, 40.0) == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("gaussian shapes are continuous everywhere (property)") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> width(0.05, 8.0);
    std::uniform_real_distribution<double> amp(0.1, 5.0);
    for (int k = 0; k < 50; ++k) {
        const double tc = width(rng);
        const PulsePolicy a = AsymmetricGaussian{amp(rng), width(rng), width(rng), tc};
        CHECK(std::abs(eval_pulse(a, tc - 1e-12) - eval_pulse(a, tc + 1e-12)) < 1e-12);
        const PulsePolicy s = SymmetricGaussian{amp(rng), width(rng), tc};
        CHECK(std::abs(eval_pulse(s, tc - 1e-12) - eval_pulse(s, tc + 1e-12)) < 1e-12);
        // area closed form matches omega0*sigma to machine precision
        const auto& sg = std::get<SymmetricGaussian>(s);
        CHECK(pulse_area(s) == doctest::Approx(sg.omega0 * sg.sigma).epsilon(1e-15));
    }
}

TEST_CASE("tabulated pulses interpolate linearly and vanish outside the range") {
    TabulatedPulse tab;
    tab.times = {0.0, 1.0, 3.0};
    tab.amps = {cplx(0.0, 0.0), cplx(2.0, 1.0), cplx(0.0, 0.0)};
    const PulsePolicy p = tab;
    CHECK(eval_pulse(p, 0.5) == cplx(1.0, 0.5));
    CHECK(eval_pulse(p, 2.0) == cplx(1.0, 0.5));
    CHECK(eval_pulse(p, -0.1) == cplx(0.0, 0.0));
    CHECK(eval_pulse(p, 3.1) == cplx(0.0, 0.0));
    CHECK(pulse_area(p) == doctest::Approx(3.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-14));
}

TEST_CASE("pulse validation rejects bad shapes") {
    const PulsePolicy zero_width = SymmetricGaussian{1.0, 0.0, 0.0};
    const PulsePolicy neg_width = AsymmetricGaussian{1.0, 1.0, -2.0, 0.0};
    CHECK_THROWS_AS(validate_pulse(zero_width), ConfigError);
    CHECK_THROWS_AS(validate_pulse(neg_width), ConfigError);
    TabulatedPulse tab;
    tab.times = {0.0, 0.0};
    tab.amps = {cplx(1.0), cplx(1.0)};
    CHECK_THROWS_AS(validate_pulse(PulsePolicy{tab}), ConfigError);
}

TEST_CASE("analytic pulse derivative matches finite differences") {
    const PulsePolicy shapes[] = {PulsePolicy{SymmetricGaussian{1.3, 1.7, 4.0}},
                                  PulsePolicy{AsymmetricGaussian{0.8, 2.5, 0.7, 6.0}}};
    for (const auto& p : shapes) {
        for (double t : {0.3, 3.9, 4.1, 5.5, 9.0}) {
            const double h = 1e-6;
            const cplx fd = (eval_pulse(p, t + h) - eval_pulse(p, t - h)) / (2.0 * h);
            CHECK(std::abs(eval_pulse_derivative(p, t) - fd) < 1e-7);
        }
    }
}
