#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "cavswap/ode.hpp"

using namespace cavswap;

using cplx = std::complex<double>;
using V1 = Eigen::Matrix<cplx, 1, 1>;

TEST_CASE("exponential decay to tight tolerance") {
    auto rhs = [](double, const V1& y) -> V1 { return -y; };
    V1 y0;
    y0 << cplx(1.0, 0.0);
    std::vector<double> report = {0.5, 1.0, 2.0, 5.0};
    std::vector<cplx> seen(report.size());
    const V1 yf = integrate_dopri5(
        rhs, y0, 0.0, 5.0, report, [&](std::size_t i, const V1& y) { seen[i] = y(0); }, {});
    for (std::size_t i = 0; i < report.size(); ++i)
        CHECK(std::abs(seen[i] - std::exp(-report[i])) < 1e-9);
    CHECK(std::abs(yf(0) - std::exp(-5.0)) < 1e-9);
}

TEST_CASE("complex rotation preserves modulus and phase") {
    auto rhs = [](double, const V1& y) -> V1 { return cplx(0.0, 1.0) * y; };
    V1 y0;
    y0 << cplx(1.0, 0.0);
    const double t1 = 20.0;
    const V1 yf = integrate_dopri5(rhs, y0, 0.0, t1, {}, [](std::size_t, const V1&) {}, {});
    CHECK(std::abs(std::abs(yf(0)) - 1.0) < 1e-8);
    CHECK(std::abs(yf(0) - std::exp(cplx(0.0, t1))) < 1e-7);
}

TEST_CASE("dense output is accurate between steps") {
    // forced oscillator with known solution y = sin(t) for y' = cos(t)
    auto rhs = [](double t, const V1&) -> V1 {
        V1 d;
        d << cplx(std::cos(t), 0.0);
        return d;
    };
    V1 y0;
    y0 << cplx(0.0, 0.0);
    std::vector<double> report;
    for (int i = 0; i <= 200; ++i) report.push_back(10.0 * i / 200.0);
    double worst = 0.0;
    integrate_dopri5(
        rhs, y0, 0.0, 10.0, report,
        [&](std::size_t i, const V1& y) {
            worst = std::max(worst, std::abs(y(0) - std::sin(report[i])));
        },
        {});
    CHECK(worst < 1e-9);
}

TEST_CASE("report point at t0 is emitted from the initial state") {
    auto rhs = [](double, const V1& y) -> V1 { return -y; };
    V1 y0;
    y0 << cplx(2.0, 0.0);
    std::vector<double> report = {0.0, 1.0};
    std::vector<cplx> seen(report.size());
    integrate_dopri5(
        rhs, y0, 0.0, 1.0, report, [&](std::size_t i, const V1& y) { seen[i] = y(0); }, {});
    CHECK(seen[0] == cplx(2.0, 0.0));
    CHECK(std::abs(seen[1] - 2.0 * std::exp(-1.0)) < 1e-9);
}

TEST_CASE("step budget violation raises StepRejection") {
    auto rhs = [](double, const V1& y) -> V1 { return -y; };
    V1 y0;
    y0 << cplx(1.0, 0.0);
    IntegrationOptions opt;
    opt.max_steps = 3;
    opt.max_step = 1e-4;
    CHECK_THROWS_AS(
        integrate_dopri5(rhs, y0, 0.0, 10.0, {}, [](std::size_t, const V1&) {}, opt),
        StepRejection);
}
