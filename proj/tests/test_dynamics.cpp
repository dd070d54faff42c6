#include "doctest.h"
#include "magnls/dynamics.hpp"
#include "test_util.hpp"

using namespace magnls;

TEST_CASE("nonlinear phase: identity, global phase, modulus preservation") {
    Grid g = make_grid(2, 32, 4.0);
    ScalarField f = test::gaussian_field(g, 0.8, 0.2, -0.1, 0.3, 0.0);
    ScalarField f0 = f;
    nonlinear_phase_step(f, 0.0, 3.0, 0.1);
    CHECK(test::max_abs_diff(f, f0) == 0.0);

    const c64 cval{0.6, -0.3};
    ScalarField c(g);
    for (std::size_t i = 0; i < g.size(); ++i) c[i] = cval;
    const double mu = -1.0, p = 2.4, dt = 0.05;
    ScalarField cc = c;
    nonlinear_phase_step(cc, mu, p, dt);
    const c64 expect = cval * std::polar(1.0, -mu * std::pow(std::abs(cval), p - 1.0) * dt);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(cc[i] - expect));
    CHECK(worst < 1e-15);

    f = f0;
    nonlinear_phase_step(f, -1.0, 3.0, 0.02);
    worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        worst = std::max(worst, std::abs(std::abs(f[i]) - std::abs(f0[i])));
    CHECK(worst < 1e-15);
    CHECK(std::abs(mass(f) - mass(f0)) < 1e-14 * mass(f0));
}

TEST_CASE("strang step with mu = 0 equals the bare linear step") {
    Grid g = make_grid(2, 64, 8.0);
    SimConfig cfg;
    cfg.dim = 2;
    cfg.n = 64;
    cfg.extent = 8.0;
    cfg.mu = 0.0;
    cfg.B = 2.0;
    cfg.dt = 1e-3;
    ScalarField f = test::landau_random_field(g, cfg.B, 0.3, 0.12, 3);
    PropagatorPlan plan = make_propagator_plan(g, cfg.B, cfg.dt);
    ScalarField a = f;
    strang_step(a, cfg, plan, 1);
    ScalarField b = f;
    apply_mehler_spectral(b, plan);
    CHECK(test::max_abs_diff(a, b) == 0.0);
}

TEST_CASE("second-order self convergence at B=0 (free split-step reference)") {
    SimConfig cfg;
    cfg.dim = 2;
    cfg.n = 64;
    cfg.extent = 8.0;
    cfg.p = 3.0;
    cfg.mu = -1.0;
    cfg.B = 0.0;
    cfg.t_end = 0.1;
    cfg.observable_stride = 1000000;  // endpoints only
    cfg.initial_state.kind = "gaussian";
    cfg.initial_state.width = 1.0;
    cfg.initial_state.mass = 3.0;

    auto run = [&](double dt) {
        SimConfig c = cfg;
        c.dt = dt;
        return evolve(c).final_state;
    };
    ScalarField coarse = run(2e-3);
    ScalarField fine = run(1e-3);
    ScalarField ref = run(2.5e-4);
    const double e_coarse = test::rel_l2(coarse, ref);
    const double e_fine = test::rel_l2(fine, ref);
    const double rate = e_coarse / e_fine;
    CHECK(rate > 3.2);
    CHECK(rate < 4.8);
}

TEST_CASE("linear Larmor-period run: flat observables and density return") {
    SimConfig cfg;
    cfg.dim = 2;
    cfg.n = 64;
    cfg.extent = 8.0;
    cfg.p = 3.0;
    cfg.mu = 0.0;
    cfg.B = 2.0;
    const double T = kPi / cfg.B;
    cfg.dt = T / 800;
    cfg.t_end = T;
    cfg.observable_stride = 80;
    cfg.initial_state.kind = "gaussian";
    cfg.initial_state.width = 0.8;
    cfg.initial_state.center = {0.6, -0.3};
    cfg.initial_state.mass = 1.0;

    ScalarField psi0 = build_initial_state(cfg);
    auto result = evolve(cfg);
    REQUIRE(!result.report.detected);
    const ObservableRow& first = result.series.front();
    for (const ObservableRow& row : result.series) {
        CHECK(std::abs(row.mass - first.mass) < 1e-10);
        CHECK(std::abs(row.energy - first.energy) < 1e-8);
        CHECK(std::abs(row.conserved - first.conserved) < 1e-8);
        CHECK(std::abs(row.l3 - first.l3) < 1e-8);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < psi0.size(); ++i)
        worst = std::max(worst,
                         std::abs(std::norm(result.final_state[i]) - std::norm(psi0[i])));
    CHECK(worst < 1e-8);
}

TEST_CASE("defocusing bound: kinetic energy stays below the initial energy") {
    SimConfig cfg;
    cfg.dim = 2;
    cfg.n = 64;
    cfg.extent = 8.0;
    cfg.p = 3.0;
    cfg.mu = 1.0;
    cfg.B = 2.0;
    cfg.dt = 5e-4;
    cfg.t_end = 0.5;
    cfg.observable_stride = 50;
    cfg.initial_state.width = 0.8;
    cfg.initial_state.mass = 4.0;
    auto result = evolve(cfg);
    const double e0 = result.series.front().energy;
    for (const ObservableRow& row : result.series) CHECK(row.kinetic <= e0 * (1 + 1e-9));
}

TEST_CASE("detector rules") {
    ObservableRow first;
    first.kinetic = 1.0;
    first.g = 1.0;
    ObservableRow flat = first;
    CHECK(detect_blowup(flat, first, 1e6, 1e-4).empty());
    ObservableRow hot = first;
    hot.kinetic = 1e7;
    CHECK(detect_blowup(hot, first, 1e6, 1e-4) == "kinetic-growth");
    ObservableRow tiny = first;
    tiny.g = 1e-5;
    CHECK(detect_blowup(tiny, first, 1e6, 1e-4) == "variance-floor");
    ObservableRow bad = first;
    bad.mass = std::numeric_limits<double>::quiet_NaN();
    CHECK(detect_blowup(bad, first, 1e6, 1e-4) == "nonfinite");
}

TEST_CASE("focusing run with negative F_S collapses and is detected") {
    SimConfig cfg;
    cfg.dim = 2;
    cfg.n = 128;
    cfg.extent = 4.0;
    cfg.p = 3.0;
    cfg.mu = -1.0;
    cfg.B = 4.0;
    cfg.dt = 2e-4;
    cfg.t_end = 1.0;
    cfg.observable_stride = 5;
    cfg.variance_floor = 0.02;
    cfg.initial_state.width = 0.4;
    cfg.initial_state.mass = 4.0 * kPi * (1.0 + 80.0 * std::pow(0.4, 4));
    ScalarField psi0 = build_initial_state(cfg);
    const double f0 = f_s(psi0, cfg.mu, cfg.p, cfg.B);
    REQUIRE(f0 < 0.0);
    auto result = evolve(cfg);
    CHECK(result.report.detected);
    CHECK(result.report.trigger == "variance-floor");
    auto predicted = first_zero({f0, cfg.B, variance_g(psi0), gdot(psi0, cfg.B)});
    REQUIRE(predicted.has_value());
    CHECK(std::abs(result.report.t_detect - *predicted) < 0.1 * *predicted);
}

TEST_CASE("determinism: identical configs give identical series") {
    SimConfig cfg;
    cfg.dim = 2;
    cfg.n = 32;
    cfg.extent = 6.0;
    cfg.p = 3.0;
    cfg.mu = -0.5;
    cfg.B = 1.0;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;
    cfg.observable_stride = 5;
    auto a = evolve(cfg);
    auto b = evolve(cfg);
    REQUIRE(a.series.size() == b.series.size());
    for (std::size_t i = 0; i < a.series.size(); ++i) {
        CHECK(a.series[i].mass == b.series[i].mass);
        CHECK(a.series[i].energy == b.series[i].energy);
        CHECK(a.series[i].g == b.series[i].g);
    }
}

TEST_CASE("unresolved initial state is rejected") {
    SimConfig cfg;
    cfg.dim = 2;
    cfg.n = 32;
    cfg.extent = 4.0;
    cfg.initial_state.width = 3.0;  // fills the box
    CHECK_THROWS_AS(evolve(cfg), GuardError);
}
