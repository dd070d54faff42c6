#include "doctest.h"
#include "magnls/observables.hpp"
#include "test_util.hpp"

using namespace magnls;

TEST_CASE("covariant gradient returns the exact momentum eigenvalue at B=0") {
    Grid g = make_grid(2, 32, 4.0);
    const double k1 = g.freq(20), k2 = g.freq(12);
    ScalarField f = sample_field(g, [&](double x1, double x2, double) {
        return std::polar(1.0, kTwoPi * (k1 * x1 + k2 * x2));
    });
    auto pi = covariant_gradient(f, 0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        worst = std::max(worst, std::abs(pi[0][i] - kTwoPi * k1 * f[i]));
        worst = std::max(worst, std::abs(pi[1][i] - kTwoPi * k2 * f[i]));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("lowest Landau level: T_S = B * mass") {
    Grid g = make_grid(2, 128, 8.0);
    const double B = 2.0;
    ScalarField lll = sample_field(g, [&](double x1, double x2, double) {
        return c64{std::exp(-0.25 * B * (x1 * x1 + x2 * x2)), 0.0};
    });
    normalize(lll, std::sqrt(2.0));
    const double ts = kinetic_s(lll, B);
    CHECK(std::abs(ts - B * mass(lll)) < 1e-6 * ts);
}

TEST_CASE("gaussian kinetic energy closed form, mu = 0") {
    const double sigma = 0.8;
    for (int dim : {2, 3}) {
        Grid g = make_grid(dim, dim == 2 ? 128 : 32, 6.0);
        ScalarField f = sample_field(g, [&](double x1, double x2, double x3) {
            return c64{std::exp(-(x1 * x1 + x2 * x2 + x3 * x3) / (4 * sigma * sigma)), 0.0};
        });
        normalize(f, 2.0);  // mass 4
        const double expect = dim * mass(f) / (4.0 * sigma * sigma);
        CHECK(std::abs(kinetic_s(f, 0.0) - expect) < 1e-8 * expect);
    }
}

TEST_CASE("real gaussian: gdot vanishes for any B") {
    Grid g = make_grid(2, 64, 8.0);
    ScalarField f = test::gaussian_field(g, 1.1);
    normalize(f);
    CHECK(std::abs(gdot(f, 0.0)) < 1e-12);
    CHECK(std::abs(gdot(f, 3.0)) < 1e-12);
}

TEST_CASE("F_S forms: B=0 reduction and the L3 identity") {
    Grid g = make_grid(2, 64, 8.0);
    ScalarField f = test::gaussian_field(g, 1.0, 0.4, -0.2, 0.1, 0.0, -1);
    normalize(f);
    const double mu = -1.0, p = 3.0;
    CHECK(std::abs(f_s(f, mu, p, 0.0) - energy_s(f, mu, p, 0.0)) < 1e-10);

    // E_S - F_S = B <L3> on arbitrary states
    for (double B : {0.5, 2.0, -1.5}) {
        const double es = energy_s(f, mu, p, B);
        const double fs = f_s(f, mu, p, B);
        const double l3 = l3_expectation(f);
        CHECK(std::abs(es - fs - B * l3) < 1e-10 * std::max(1.0, std::abs(es)));
    }

    // L3 eigenstate with eigenvalue m: E_S - F_S = B m mass
    ScalarField em = test::gaussian_field(g, 0.9, 0, 0, 0, 0, -1);
    normalize(em, std::sqrt(2.0));
    const double B = 1.7;
    CHECK(std::abs(l3_expectation(em) + mass(em)) < 1e-8);
    CHECK(std::abs(energy_s(em, mu, p, B) - f_s(em, mu, p, B) + B * mass(em)) < 1e-8);
}

TEST_CASE("variance scales as lambda^-2 under dilation") {
    Grid g = make_grid(2, 128, 8.0);
    const double lambda = 1.5;
    ScalarField f = test::gaussian_field(g, 1.0);
    ScalarField fl = sample_field(g, [&](double x1, double x2, double) {
        const double r2 = lambda * lambda * (x1 * x1 + x2 * x2);
        return c64{lambda * std::exp(-r2 / 4.0), 0.0};  // lambda^{d/2} psi(lambda x)
    });
    normalize(f);
    normalize(fl);
    CHECK(variance_g(fl) == doctest::Approx(variance_g(f) / (lambda * lambda)).epsilon(1e-9));
}

TEST_CASE("virial rhs: the nonlinear term drops at the critical power") {
    Grid g = make_grid(2, 64, 8.0);
    ScalarField f = test::gaussian_field(g, 1.0);
    normalize(f, 2.0);
    const double B = 1.3;
    const double pc = 3.0;  // 1 + 4/d at d = 2
    const double f0 = f_s(f, -1.0, pc, B);
    const double rhs_mu1 = virial_rhs_s(f, -1.0, pc, B, f0);
    const double rhs_mu2 = virial_rhs_s(f, +0.7, pc, B, f0);
    CHECK(rhs_mu1 == doctest::Approx(rhs_mu2).epsilon(1e-14));
    // B=0, mu=0: rhs = 2 E0
    CHECK(std::abs(virial_rhs_s(f, 0.0, pc, 0.0, energy_s(f, 0.0, pc, 0.0)) -
                   2.0 * kinetic_s(f, 0.0)) < 1e-10);
}

TEST_CASE("pauli observables: eigenstate reductions") {
    Grid g = make_grid(2, 64, 8.0);
    const double B = 2.0;

    // down-component zero: T_P = T_S + B mass
    ScalarField up = test::gaussian_field(g, 0.9, 0.2, 0.0);
    SpinorField polarized(up, ScalarField(g));
    normalize(polarized, std::sqrt(3.0));
    const double tp = kinetic_p(polarized, B);
    CHECK(std::abs(tp - (kinetic_s(polarized.up(), B) + B * mass(polarized))) < 1e-9 * tp);

    // equal-weight spinor: spin_z = 0
    SpinorField equal(up, up);
    normalize(equal);
    CHECK(std::abs(spin_z(equal)) < 1e-14);

    // lowest-Landau up-spinor: T_P = 2 B mass (Landau + Zeeman)
    ScalarField lll = sample_field(g, [&](double x1, double x2, double) {
        return c64{std::exp(-0.25 * B * (x1 * x1 + x2 * x2)), 0.0};
    });
    SpinorField landau(lll, ScalarField(g));
    normalize(landau);
    CHECK(std::abs(kinetic_p(landau, B) - 2.0 * B * mass(landau)) < 1e-6);
}

TEST_CASE("pauli dual forms agree on random spinors") {
    Grid g = make_grid(2, 32, 6.0);
    std::mt19937_64 rng(23);
    std::normal_distribution<double> d(0.0, 1.0);
    ScalarField a = test::gaussian_field(g, 0.8), b = test::gaussian_field(g, 0.7, 0.3, -0.2);
    for (std::size_t i = 0; i < g.size(); ++i) {
        a[i] *= c64{d(rng), d(rng)};
        b[i] *= c64{d(rng), d(rng)};
    }
    SpinorField psi(a, b);
    normalize(psi);
    const double B = 1.4;
    CHECK_NOTHROW(kinetic_p(psi, B));   // direct vs reduced, 1e-10 internally
    CHECK_NOTHROW(f_p(psi, -1.0, 3.0, B));
    // sigma-cross reduction identity, explicitly
    const double lhs = sigma_cross(psi, B);
    const double rhs = xperp_cross(psi.up(), B) + xperp_cross(psi.down(), B) + spin_z(psi);
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));
}

TEST_CASE("pauli dual forms agree in 3D") {
    Grid g = make_grid(3, 16, 5.0);
    ScalarField a = sample_field(g, [](double x1, double x2, double x3) {
        return std::polar(std::exp(-0.4 * (x1 * x1 + x2 * x2 + x3 * x3)), 0.3 * x1 * x3);
    });
    ScalarField b = sample_field(g, [](double x1, double x2, double x3) {
        return std::polar(std::exp(-0.5 * (x1 * x1 + x2 * x2 + x3 * x3)), -0.2 * x2 + 0.1 * x3);
    });
    SpinorField psi(a, b);
    normalize(psi);
    CHECK_NOTHROW(kinetic_p(psi, 1.1));
    CHECK_NOTHROW(f_p(psi, -1.0, 2.2, 1.1));
}
