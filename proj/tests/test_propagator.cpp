#include "doctest.h"
#include "magnls/propagator.hpp"
#include "test_util.hpp"

using namespace magnls;

TEST_CASE("kernel value pins prefactor and exponent") {
    const double B = 2.0, t = 0.3;
    const double s = std::sin(B * t);
    // x = y = 0: exponent vanishes, value is the prefactor B/(4 pi i sin Bt)
    const c64 v0 = mehler_kernel_value(0, 0, 0, 0, t, B);
    CHECK(std::abs(v0 - c64{0.0, -B / (4.0 * kPi * s)}) < 1e-15);

    // hand evaluation at B=1, t=pi/2: cot = 0, wedge = 1
    const c64 v1 = mehler_kernel_value(1, 0, 0, 1, 0.5 * kPi, 1.0);
    const c64 expect = c64{0.0, -1.0 / (4.0 * kPi)} * std::polar(1.0, 0.5);
    CHECK(std::abs(v1 - expect) < 1e-15);

    // unitarity + group symmetry: conj(M(y,x,t)) = M(x,y,-t)
    const c64 a = mehler_kernel_value(0.3, -1.2, 0.9, 0.4, t, B);
    const c64 b = mehler_kernel_value(0.9, 0.4, 0.3, -1.2, t, B);
    CHECK(std::abs(std::conj(b) - mehler_kernel_value(0.3, -1.2, 0.9, 0.4, -t, B)) < 1e-15);
    CHECK(std::abs(std::abs(a) - std::abs(b)) < 1e-16);

    CHECK_THROWS_AS(mehler_kernel_value(0, 0, 0, 0, kPi / B, B), std::domain_error);
    CHECK_THROWS_AS(mehler_kernel_value(0, 0, 0, 0, 0.0, B), std::domain_error);
}

TEST_CASE("dense path: lowest Landau level acquires phase e^{-iBt}") {
    Grid g = make_grid(2, 64, 8.0);
    const double B = 1.5, t = 0.45;
    ScalarField lll = sample_field(g, [&](double x1, double x2, double) {
        return c64{std::exp(-0.25 * B * (x1 * x1 + x2 * x2)), 0.0};
    });
    normalize(lll);
    ScalarField out = apply_mehler_dense(lll, t, B);
    const c64 ph = std::polar(1.0, -B * t);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(out[i] - ph * lll[i]));
    CHECK(worst < 1e-8);
    CHECK(std::abs(lq_norm(out, 2.0) - 1.0) < 1e-8);
}

TEST_CASE("chirp-transform path reproduces the dense sum for any input") {
    Grid g = make_grid(2, 32, 6.0);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> d(0.0, 1.0);
    ScalarField f(g);
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = c64{d(rng), d(rng)};
    for (auto [B, t] : std::vector<std::pair<double, double>>{
             {2.0, 0.3}, {1.0, kPi / 4}, {3.0, 0.02}, {-2.0, 0.25}, {0.7, 1.0}}) {
        CAPTURE(B);
        CAPTURE(t);
        PropagatorPlan plan = make_propagator_plan(g, B, t);
        ScalarField fast = apply_mehler_fast(f, plan);
        ScalarField dense = apply_mehler_dense(f, t, B);
        CHECK(test::rel_l2(fast, dense) < 1e-12);
    }
}

TEST_CASE("spectral path agrees with the dense oracle on resolved fields") {
    Grid g = make_grid(2, 64, 8.0);
    const double B = 1.5, t = 0.5 / B;
    ScalarField f = test::landau_random_field(g, B, 0.3, 0.12, 42);
    PropagatorPlan plan = make_propagator_plan(g, B, t);
    ScalarField spec = f;
    apply_mehler_spectral(spec, plan);
    ScalarField dense = apply_mehler_dense(f, t, B);
    CHECK(test::rel_l2(spec, dense) < 1e-9);
    CHECK(std::abs(lq_norm(spec, 2.0) - 1.0) < 1e-12);
}

TEST_CASE("spectral path: eigenphases, group law, composition") {
    Grid g = make_grid(2, 64, 8.0);
    const double B = 2.0;
    ScalarField lll = sample_field(g, [&](double x1, double x2, double) {
        return c64{std::exp(-0.25 * B * (x1 * x1 + x2 * x2)), 0.0};
    });
    normalize(lll);

    const double t = 0.3;
    ScalarField out = apply_us(lll, t, B);
    const c64 ph = std::polar(1.0, -B * t);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(out[i] - ph * lll[i]));
    CHECK(worst < 1e-12);

    // m = -1 trial state is degenerate with the LLL (E = B)
    ScalarField m1 = sample_field(g, [&](double x1, double x2, double) {
        return c64{x1, -x2} * std::exp(-0.25 * B * (x1 * x1 + x2 * x2));
    });
    normalize(m1);
    ScalarField outm = apply_us(m1, t, B);
    worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        worst = std::max(worst, std::abs(outm[i] - ph * m1[i]));
    CHECK(worst < 1e-11);

    // group law: two steps of t equal one step of 2t
    ScalarField f = test::landau_random_field(g, B, 0.3, 0.12, 9);
    ScalarField two = apply_us(apply_us(f, t, B), t, B);
    ScalarField one = apply_us(f, 2 * t, B);
    CHECK(test::max_abs_diff(two, one) < 1e-10);

    // negative field: M_{-B}(t) f = conj(M_B(t) conj f)
    ScalarField fc = f;
    for (std::size_t i = 0; i < g.size(); ++i) fc[i] = std::conj(fc[i]);
    ScalarField lhs = apply_us(f, t, -B);
    ScalarField rhs = apply_us(fc, t, B);
    for (std::size_t i = 0; i < g.size(); ++i) rhs[i] = std::conj(rhs[i]);
    CHECK(test::max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("half-period reduction: M(pi/B) = -identity") {
    Grid g = make_grid(2, 64, 8.0);
    const double B = 2.0;
    ScalarField f = test::landau_random_field(g, B, 0.3, 0.12, 17);
    ScalarField out = apply_us(f, kPi / B, B);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(out[i] + f[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("free propagator: identity at t=0, closed-form spreading, composition") {
    Grid g = make_grid(2, 64, 8.0);
    const double a = 0.5;
    ScalarField f = sample_field(g, [&](double x1, double x2, double) {
        return c64{std::exp(-a * (x1 * x1 + x2 * x2)), 0.0};
    });
    ScalarField id = free_propagator(f, 0.0, {1, 2});
    CHECK(test::max_abs_diff(id, f) < 1e-14);

    const double t = 0.35;
    ScalarField evolved = free_propagator(f, t, {1, 2});
    // e^{it Laplacian} e^{-a|x|^2} = (1+4iat)^{-1} e^{-a|x|^2/(1+4iat)} in 2D
    const c64 den{1.0, 4.0 * a * t};
    ScalarField expect = sample_field(g, [&](double x1, double x2, double) {
        return std::exp(-a * (x1 * x1 + x2 * x2) / den) / den;
    });
    CHECK(test::max_abs_diff(evolved, expect) < 1e-10);
    CHECK(boundary_mass(evolved) < 1e-12);

    ScalarField twice = free_propagator(free_propagator(f, 0.2, {1, 2}), 0.15, {1, 2});
    CHECK(test::max_abs_diff(twice, evolved) < 1e-12);
}

TEST_CASE("3D factorization: transverse Mehler and axis-3 free phase commute") {
    Grid g = make_grid(3, 16, 6.0);
    const double B = 1.2, t = 0.4;
    ScalarField f = sample_field(g, [&](double x1, double x2, double x3) {
        return std::polar(std::exp(-0.3 * (x1 * x1 + x2 * x2) - 0.4 * x3 * x3), 0.3 * x1 - 0.2 * x3);
    });
    normalize(f);
    ScalarField a = apply_us(f, t, B);
    // manual composition in the opposite order
    ScalarField b = free_propagator(f, t, {3});
    PropagatorPlan plan = make_propagator_plan(g, B, t);
    // strip the plan's own axis-3 factor by undoing it afterwards
    apply_mehler_spectral(b, plan);
    b = free_propagator(b, -t, {3});
    CHECK(test::max_abs_diff(a, b) < 1e-12);
    CHECK(std::abs(lq_norm(a, 2.0) - 1.0) < 1e-10);
}

TEST_CASE("B -> 0 limit agrees with the free propagator") {
    Grid g = make_grid(2, 64, 8.0);
    ScalarField f = test::gaussian_field(g, 1.0);
    normalize(f);
    const double t = 0.1;
    ScalarField mag = apply_us(f, t, 1e-6);
    ScalarField fre = free_propagator(f, t, {1, 2});
    CHECK(test::rel_l2(mag, fre) < 1e-4);
    ScalarField zero = apply_us(f, t, 0.0);
    CHECK(test::max_abs_diff(zero, fre) == 0.0);
}

TEST_CASE("Pauli step: diagonal Zeeman phases on top of U_S") {
    Grid g = make_grid(2, 32, 6.0);
    const double B = 1.5, t = 0.3;
    ScalarField up = test::gaussian_field(g, 0.8);
    SpinorField psi(up, ScalarField(g));
    normalize(psi);
    SpinorField out = apply_up(psi, t, B);
    ScalarField expect = apply_us(psi.up(), t, B);
    kernels::ops().cscale(expect.data(), std::polar(1.0, -B * t), expect.size());
    CHECK(test::max_abs_diff(out.up(), expect) < 1e-13);
    CHECK(lq_norm(out.down(), 2.0) == 0.0);
    CHECK(std::abs(mass(out) - 1.0) < 1e-10);

    // <sigma_3> is constant under the linear flow
    SpinorField mixed(test::gaussian_field(g, 0.8), test::gaussian_field(g, 0.6, 0.3, 0.0));
    normalize(mixed);
    const double sz0 = mass(mixed.up()) - mass(mixed.down());
    SpinorField evolved = apply_up(mixed, 0.4, B);
    const double sz1 = mass(evolved.up()) - mass(evolved.down());
    CHECK(std::abs(sz1 - sz0) < 1e-10);
}

TEST_CASE("plan guards") {
    Grid g = make_grid(2, 32, 6.0);
    CHECK_THROWS_AS(make_propagator_plan(g, 4.0, 1.0), std::invalid_argument);
    Grid g3 = make_grid(3, 16, 6.0);
    ScalarField f(g3);
    CHECK_THROWS_AS(apply_mehler_dense(f, 0.3, 1.0), std::invalid_argument);
}
