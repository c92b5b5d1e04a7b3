#include <doctest.h>

#include <cmath>
#include <random>

#include "cavswap/errors.hpp"
#include "cavswap/model.hpp"

using namespace cavswap;

TEST_CASE("cooperativity matches the table rows") {
    const SystemParams strong{std::sqrt(10.0), 1.0, 1.0};
    const SystemParams purcell{5.0, 25.0, 1.0};
    const SystemParams lossy{0.2, 0.04, 1.0};
    const SystemParams undamped{1.0, 1.0, 0.0};
    CHECK(strong.cooperativity() == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(purcell.cooperativity() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lossy.cooperativity() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::isinf(undamped.cooperativity()));
}

TEST_CASE("cooperativity is invariant under common rate rescaling (property)") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.05, 20.0);
    for (int k = 0; k < 50; ++k) {
        SystemParams p{u(rng), u(rng), u(rng)};
        const double s = u(rng);
        SystemParams q{s * p.g, s * p.kappa, s * p.gamma_u};
        CHECK(q.cooperativity() == doctest::Approx(p.cooperativity()).epsilon(1e-12));
    }
}

TEST_CASE("parameter validation") {
    const SystemParams zero_g{0.0, 1.0, 1.0};
    const SystemParams neg_kappa{1.0, -1.0, 1.0};
    SystemParams neg_gamma_g{1.0, 1.0, 1.0};
    neg_gamma_g.gamma_g = -0.1;
    const SystemParams no_decay{1.0, 1.0, 0.0};
    CHECK_THROWS_AS(zero_g.validate(), ConfigError);
    CHECK_THROWS_AS(neg_kappa.validate(), ConfigError);
    CHECK_THROWS_AS(neg_gamma_g.validate(), ConfigError);
    CHECK_NOTHROW(no_decay.validate());
}

TEST_CASE("effective hamiltonian reproduces the resonant matrix form") {
    const SystemParams p{1.0, 1.0, 1.0};
    const PulsePolicy off = SymmetricGaussian{0.0, 1.0, 0.0};
    const Eigen::Matrix3cd h = effective_hamiltonian(p, off, 12.0);
    Eigen::Matrix3cd expect;
    expect << 0.0, 0.0, 0.0, 0.0, cplx(0, -1), 1.0, 0.0, 1.0, cplx(0, -1);
    CHECK((h - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("effective hamiltonian carries the pump at its peak") {
    const SystemParams p{std::sqrt(10.0), 1.0, 1.0};
    const PulsePolicy pump = SymmetricGaussian{2.0, 1.0, 5.0};
    const Eigen::Matrix3cd h = effective_hamiltonian(p, pump, 5.0);
    CHECK(h(0, 2) == cplx(2.0, 0.0));
    CHECK(h(2, 0) == cplx(2.0, 0.0));
    CHECK(h(2, 2) == cplx(0.0, -1.0));
    CHECK(h(1, 2) == cplx(std::sqrt(10.0), 0.0));
}

TEST_CASE("detunings sit on the u0 and e0 diagonals, kappa stays on g1") {
    SystemParams p{1.0, 1.0, 1.0};
    p.delta_u = 0.5;
    p.delta_e = 0.3;
    const PulsePolicy off = SymmetricGaussian{0.0, 1.0, 0.0};
    const Eigen::Matrix3cd h = effective_hamiltonian(p, off, 0.0);
    CHECK(h(0, 0) == cplx(0.5, 0.0));
    CHECK(h(1, 1) == cplx(0.0, -1.0));
    CHECK(h(2, 2) == cplx(0.3, -1.0));
    CHECK(p.delta_p() == doctest::Approx(-0.2));
    CHECK(p.delta_c() == doctest::Approx(0.3));
}

TEST_CASE("gamma_g adds damping on the e0 diagonal without recycling") {
    SystemParams p{1.0, 1.0, 1.0};
    p.gamma_g = 0.25;
    const PulsePolicy off = SymmetricGaussian{0.0, 1.0, 0.0};
    CHECK(effective_hamiltonian(p, off, 0.0)(2, 2) == cplx(0.0, -1.25));
}

TEST_CASE("with everything off only the two couplings and the damping diagonals remain") {
    SystemParams p{1.7, 0.4, 0.9};
    const PulsePolicy off = SymmetricGaussian{0.0, 1.0, 0.0};
    const Eigen::Matrix3cd h = effective_hamiltonian(p, off, 3.0);
    int nonzero = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && std::abs(h(i, j)) > 0.0) ++nonzero;
    CHECK(nonzero == 2);
    CHECK(h(1, 2) == cplx(1.7, 0.0));
    CHECK(h(2, 1) == cplx(1.7, 0.0));
    CHECK(h(1, 1) == cplx(0.0, -0.4));
    CHECK(h(2, 2) == cplx(0.0, -0.9));
}

TEST_CASE("adiabaticity diagnostics") {
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(i * 0.05);

    SUBCASE("constant pump has zero adiabatic ratio") {
        TabulatedPulse tab;
        tab.times = {-100.0, 100.0};
        tab.amps = {cplx(3.0), cplx(3.0)};
        const SystemParams p{1.0, 1.0, 1.0};
        const auto rep = adiabaticity_report(p, tab, grid);
        CHECK(rep.pulse_ratio == doctest::Approx(0.0));
        CHECK(rep.pulse_ok);
        // g / max Omega = 1/3
        CHECK(rep.drive_ratio == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        CHECK(rep.drive_ok);
    }

    SUBCASE("intermediate regime fails the strong-coupling condition") {
        const SystemParams p{1.0, 1.0, 1.0};
        const PulsePolicy pump = SymmetricGaussian{3.0, 2.0, 10.0};
        const auto rep = adiabaticity_report(p, pump, grid);
        CHECK(rep.coupling_ratio == doctest::Approx(1.0));
        CHECK_FALSE(rep.coupling_ok);
    }
}
