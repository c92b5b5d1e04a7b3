#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "cavswap/errors.hpp"
#include "cavswap/master.hpp"
#include "oracle.hpp"

using namespace cavswap;

namespace {

UniformGrid fixed_grid(double t_end, int n) { return UniformGrid{0.0, t_end / (n - 1), n}; }

const SystemParams row_a{1.0, 1.0, 1.0};

PulsePolicy gaussian(double area, double sigma) {
    return SymmetricGaussian{area / sigma, sigma, default_pulse_center(sigma)};
}

TabulatedPulse constant_pulse(double amp, double t_lo, double t_hi) {
    TabulatedPulse tab;
    tab.times = {t_lo, t_hi};
    tab.amps = {cplx(amp), cplx(amp)};
    return tab;
}

} // namespace

TEST_CASE("dark initial state stays put without a pump") {
    const PulsePolicy off = SymmetricGaussian{0.0, 1.0, 0.0};
    const auto traj = evolve_density(row_a, off, fixed_grid(20.0, 101));
    for (int i = 0; i < traj.size(); ++i) {
        CHECK(std::abs(traj.rho[i](0, 0) - 1.0) < 1e-12);
        Eigen::Matrix4cd expect = Eigen::Matrix4cd::Zero();
        expect(0, 0) = 1.0;
        CHECK((traj.rho[i] - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("decoupled two-level drive gives Rabi oscillations") {
    SystemParams p{0.0, 1.0, 0.0};  // g = 0: |u0> <-> |e0| only
    const double omega = 0.8;
    const PulsePolicy drive = constant_pulse(omega, -1.0, 100.0);
    const auto traj = evolve_density(p, drive, fixed_grid(10.0, 201));
    for (int i = 0; i < traj.size(); ++i) {
        const double expect = std::pow(std::cos(omega * traj.t[i]), 2);
        CHECK(std::abs(traj.rho[i](0, 0).real() - expect) < 1e-6);
    }
}

TEST_CASE("trajectory conservation laws on a driven run") {
    const auto traj = evolve_density(row_a, gaussian(2.0, 1.5), fixed_grid(25.0, 401));
    double worst_herm = 0.0, worst_trace = 0.0, worst_diag = 0.0, worst_block = 0.0;
    for (const auto& rho : traj.rho) {
        worst_herm = std::max(worst_herm, (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff());
        worst_trace = std::max(worst_trace, std::abs(rho.trace().real() - 1.0));
        for (int d = 0; d < 4; ++d) {
            worst_diag = std::max(worst_diag, -rho(d, d).real());
            worst_diag = std::max(worst_diag, rho(d, d).real() - 1.0);
        }
        for (int r = 0; r < 3; ++r) worst_block = std::max(worst_block, std::abs(rho(r, 3)));
    }
    CHECK(worst_herm < 1e-10);
    CHECK(worst_trace < 1e-8);
    CHECK(worst_diag < 1e-10);
    CHECK(worst_block == 0.0);
}

TEST_CASE("gamma_g drains the trace monotonically") {
    SystemParams p = row_a;
    p.gamma_g = 0.4;
    const auto traj = evolve_density(p, gaussian(2.0, 1.5), fixed_grid(25.0, 401));
    double prev = 1.0 + 1e-12;
    for (const auto& rho : traj.rho) {
        const double tr = rho.trace().real();
        CHECK(tr <= prev + 1e-10);
        prev = tr;
    }
    CHECK(traj.rho.back().trace().real() < 1.0 - 1e-3);
}

TEST_CASE("cumulative emission is monotone and consistent with the quadrature") {
    const auto dyn = solve_dynamics(row_a, gaussian(3.0, 2.0));
    const auto& traj = dyn.traj;
    double prev = -1e-12;
    for (int i = 0; i < traj.size(); ++i) {
        CHECK(traj.rho44(i) >= prev - 1e-10);
        prev = traj.rho44(i);
    }
    CHECK(cumulative_emission(traj, 0.0) == doctest::Approx(0.0).epsilon(1e-10));
    const double p_ex = photon_emission_probability(traj, row_a);
    CHECK(std::abs(p_ex - traj.rho44(traj.size() - 1)) < 1e-6);
    const double mid = cumulative_emission(traj, 0.5 * traj.t.back());
    CHECK(mid > 0.0);
    CHECK(mid <= p_ex + 1e-9);
    CHECK_THROWS_AS(cumulative_emission(traj, -1.0), std::out_of_range);
    CHECK_THROWS_AS(cumulative_emission(traj, traj.t.back() + 1.0), std::out_of_range);
}

TEST_CASE("cumulative emission interpolates the quadrature of 2k rho22 (property)") {
    const auto dyn = solve_dynamics(row_a, gaussian(2.0, 1.0));
    const auto& traj = dyn.traj;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> pick(0.0, traj.t.back());
    for (int k = 0; k < 100; ++k) {
        const double t = pick(rng);
        // trapezoid of 2*kappa*rho22 up to the enclosing sample as an oracle
        const int idx = static_cast<int>(t / traj.dt);
        double acc = 0.0;
        for (int i = 0; i < idx; ++i)
            acc += 0.5 * traj.dt * (traj.rho22(i) + traj.rho22(i + 1)) * 2.0 * row_a.kappa;
        const double lo = cumulative_emission(traj, traj.t[idx]);
        CHECK(lo == doctest::Approx(acc).epsilon(5e-4));
        const double v = cumulative_emission(traj, t);
        CHECK(v >= lo - 1e-10);
    }
}

TEST_CASE("residual window criterion holds after solve_dynamics") {
    const auto dyn = solve_dynamics(row_a, gaussian(3.0, 2.0));
    CHECK(dyn.residual < 1e-6);
    CHECK(dyn.traj.final_residual() < 1e-6);
}

TEST_CASE("solver reports non-convergence when population cannot drain") {
    SystemParams p{0.0, 1.0, 0.0};  // no cavity coupling, no spontaneous decay
    GridPolicy pol;
    pol.max_extensions = 3;
    pol.base_points = 200;
    pol.max_points = 200;
    CHECK_THROWS_AS(solve_dynamics(p, constant_pulse(1.0, -1.0, 4.0), pol), NonConvergence);
}

TEST_CASE("step budget exhaustion surfaces as StepRejection") {
    IntegrationOptions opt;
    opt.max_steps = 5;
    opt.max_step = 1e-5;
    CHECK_THROWS_AS(evolve_density(row_a, gaussian(2.0, 1.0), fixed_grid(20.0, 11), opt),
                    StepRejection);
}

TEST_CASE("pure photon probability equals the full one without recycling") {
    SystemParams p = row_a;
    p.gamma_u = 0.0;
    const auto pulse = gaussian(2.0, 1.5);
    const auto dyn = solve_dynamics(p, pulse);
    const double p_ex = photon_emission_probability(dyn.traj, p);
    const double p0 = pure_photon_probability(p, pulse, dyn.grid);
    CHECK(std::abs(p0 - p_ex) < 1e-8);
}

TEST_CASE("recycling can only add emission: P0 <= P_ex (property)") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> gs(0.4, 2.5), area(0.5, 3.0), width(0.4, 3.0);
    for (int k = 0; k < 8; ++k) {
        SystemParams p{gs(rng), gs(rng), 1.0};
        const auto pulse = gaussian(area(rng), width(rng));
        const auto dyn = solve_dynamics(p, pulse);
        const double p_ex = photon_emission_probability(dyn.traj, p);
        const double p0 = pure_photon_probability(p, pulse, dyn.grid);
        CHECK(p0 <= p_ex + 1e-8);
        CHECK(p0 >= 0.0);
    }
}

TEST_CASE("forcing half the step size leaves P_ex unchanged at default tolerance") {
    const auto pulse = gaussian(2.0, 1.5);
    const UniformGrid grid = fixed_grid(25.0, 301);
    IntegrationOptions coarse;
    coarse.max_step = 0.05;
    IntegrationOptions fine;
    fine.max_step = 0.025;
    const auto t1 = evolve_density(row_a, pulse, grid, coarse);
    const auto t2 = evolve_density(row_a, pulse, grid, fine);
    CHECK(std::abs(t1.rho44(t1.size() - 1) - t2.rho44(t2.size() - 1)) < 1e-6);
    CHECK(std::abs(photon_emission_probability(t1, row_a) -
                   photon_emission_probability(t2, row_a)) < 1e-6);
}

TEST_CASE("reduced equation matches the full-space oracle") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> gs(0.5, 2.5), ks(0.5, 2.5), area(0.5, 2.5),
        width(0.4, 2.0), det(-0.5, 0.5);
    for (int k = 0; k < 6; ++k) {
        SystemParams p{gs(rng), ks(rng), 1.0};
        if (k >= 4) {
            p.delta_u = det(rng);
            p.delta_e = det(rng);
        }
        if (k == 5) p.gamma_g = 0.3;
        const auto pulse = gaussian(area(rng), width(rng));
        const auto dyn = solve_dynamics(p, pulse);
        const double p_reduced = photon_emission_probability(dyn.traj, p);

        const double max_rate = std::max({p.kappa, p.gamma_u + p.gamma_g, p.g,
                                          peak_rabi(pulse), 1.0});
        const double h = std::min(0.02 / max_rate, pulse_width(pulse) / 40.0);
        const auto full = oracle::integrate_full_lindblad(p, pulse, dyn.grid.t_end(), h);
        CHECK(std::abs(p_reduced - full.p_ex) < 1e-4);
        CHECK(std::abs(dyn.traj.rho44(dyn.traj.size() - 1) - full.g0_final) < 1e-4);
    }
}

TEST_CASE("grid construction respects the resolution policy") {
    GridPolicy pol;
    pol.base_points = 300;
    pol.max_points = 900;
    const auto g1 = make_grid(row_a, gaussian(1.0, 0.5), 20.0, pol);
    CHECK(g1.n >= 300);
    CHECK(g1.n <= 900);
    const auto g2 = make_grid(row_a, gaussian(1.0, 10.0), 300.0, pol);
    CHECK(g2.n == 900);  // long window saturates the cap
    CHECK(g2.t_end() == doctest::Approx(300.0));
}

TEST_CASE("evolve_density rejects degenerate grids") {
    const UniformGrid degenerate{0.0, 0.0, 1};
    CHECK_THROWS_AS(evolve_density(row_a, gaussian(1.0, 1.0), degenerate), ConfigError);
}
