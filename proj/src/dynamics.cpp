#include "magnls/dynamics.hpp"

#include <cmath>

#include "magnls/oracles.hpp"
#include "magnls/snapshot.hpp"

namespace magnls {

void SimConfig::validate() const {
    if (dim != 2 && dim != 3) throw ConfigError("dim must be 2 or 3");
    if (!(p > 1.0)) throw ConfigError("p must exceed 1");
    if (dim == 3 && !(p < 5.0)) throw ConfigError("p must lie in (1, 5) for dim 3");
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
    if (observable_stride == 0) throw ConfigError("observable_stride must be >= 1");
    if (!(kinetic_ratio_threshold > 1.0)) throw ConfigError("kinetic_ratio_threshold must exceed 1");
    if (!(variance_floor > 0.0) || variance_floor >= 1.0)
        throw ConfigError("variance_floor must lie in (0, 1)");
    Grid probe(dim, n, extent);  // grid construction re-checks n, extent
    (void)probe;
}

void nonlinear_phase_step(ScalarField& f, double mu, double p, double dt) {
    if (mu == 0.0 || dt == 0.0) return;
    const double c = -mu * dt;
    c64* v = f.data();
    const std::size_t size = f.size();
    if (p == 3.0) {
        for (std::size_t i = 0; i < size; ++i) v[i] *= std::polar(1.0, c * std::norm(v[i]));
    } else if (p == 5.0) {
        for (std::size_t i = 0; i < size; ++i) {
            const double a2 = std::norm(v[i]);
            v[i] *= std::polar(1.0, c * a2 * a2);
        }
    } else {
        const double e = 0.5 * (p - 1.0);
        for (std::size_t i = 0; i < size; ++i) {
            const double a2 = std::norm(v[i]);
            v[i] *= std::polar(1.0, a2 == 0.0 ? 0.0 : c * std::pow(a2, e));
        }
    }
}

void nonlinear_phase_step(SpinorField& f, double mu, double p, double dt) {
    if (mu == 0.0 || dt == 0.0) return;
    const double c = -mu * dt;
    c64* u = f.up().data();
    c64* d = f.down().data();
    const double e = 0.5 * (p - 1.0);
    for (std::size_t i = 0; i < f.up().size(); ++i) {
        const double a2 = std::norm(u[i]) + std::norm(d[i]);
        const double phase = a2 == 0.0 ? 0.0 : (p == 3.0 ? c * a2 : c * std::pow(a2, e));
        const c64 ph = std::polar(1.0, phase);
        u[i] *= ph;
        d[i] *= ph;
    }
}

void strang_step(ScalarField& f, const SimConfig& cfg, const PropagatorPlan& plan, int pieces) {
    const double dt = plan.t * pieces;
    nonlinear_phase_step(f, cfg.mu, cfg.p, 0.5 * dt);
    for (int s = 0; s < pieces; ++s) apply_mehler_spectral(f, plan);
    nonlinear_phase_step(f, cfg.mu, cfg.p, 0.5 * dt);
}

void strang_step(SpinorField& f, const SimConfig& cfg, const PropagatorPlan& plan, int pieces) {
    const double dt = plan.t * pieces;
    nonlinear_phase_step(f, cfg.mu, cfg.p, 0.5 * dt);
    for (int s = 0; s < pieces; ++s) {
        apply_mehler_spectral(f.up(), plan);
        apply_mehler_spectral(f.down(), plan);
    }
    kernels::ops().cscale(f.up().data(), std::polar(1.0, -cfg.B * dt), f.up().size());
    kernels::ops().cscale(f.down().data(), std::polar(1.0, +cfg.B * dt), f.down().size());
    nonlinear_phase_step(f, cfg.mu, cfg.p, 0.5 * dt);
}

std::string detect_blowup(const ObservableRow& row, const ObservableRow& first,
                          double kinetic_ratio_threshold, double variance_floor) {
    const bool finite = std::isfinite(row.mass) && std::isfinite(row.kinetic) &&
                        std::isfinite(row.energy) && std::isfinite(row.g);
    if (!finite) return "nonfinite";
    if (first.kinetic > 0.0 && row.kinetic / first.kinetic > kinetic_ratio_threshold)
        return "kinetic-growth";
    if (first.g > 0.0 && row.g < variance_floor * first.g) return "variance-floor";
    return {};
}

namespace {

ScalarField build_scalar_state(const InitialState& st, const SimConfig& cfg, const Grid& grid) {
    ScalarField f(grid);
    if (st.kind == "zero") return f;
    if (st.kind == "gaussian") {
        const double s4 = 4.0 * st.width * st.width;
        const double c1 = st.center.size() > 0 ? st.center[0] : 0.0;
        const double c2 = st.center.size() > 1 ? st.center[1] : 0.0;
        const double c3 = st.center.size() > 2 ? st.center[2] : 0.0;
        const double k1 = st.momentum.size() > 0 ? st.momentum[0] : 0.0;
        const double k2 = st.momentum.size() > 1 ? st.momentum[1] : 0.0;
        const double k3 = st.momentum.size() > 2 ? st.momentum[2] : 0.0;
        const int m = st.charge;
        f = sample_field(grid, [&](double x1, double x2, double x3) {
            const double d1 = x1 - c1, d2 = x2 - c2, d3 = grid.dim() == 3 ? x3 - c3 : 0.0;
            const double r2 = d1 * d1 + d2 * d2 + d3 * d3;
            c64 v = std::polar(std::exp(-r2 / s4), kTwoPi * (k1 * d1 + k2 * d2 + k3 * d3));
            if (m != 0) {
                const c64 z = m > 0 ? c64{d1, d2} : c64{d1, -d2};
                for (int q = 0; q < std::abs(m); ++q) v *= z;
            }
            return v;
        });
    } else if (st.kind == "lowest-landau") {
        const double B = cfg.B;
        if (!(B > 0.0)) throw ConfigError("lowest-landau initial state requires B > 0");
        const double w3 = st.width;
        f = sample_field(grid, [&](double x1, double x2, double x3) {
            double v = std::exp(-0.25 * B * (x1 * x1 + x2 * x2));
            if (grid.dim() == 3) v *= std::exp(-x3 * x3 / (4.0 * w3 * w3));
            return c64{v, 0.0};
        });
    } else if (st.kind == "paper-example") {
        f = paper_example_state(grid);
    } else if (st.kind == "file") {
        f = read_snapshot(st.path, grid);
    } else {
        throw ConfigError("unknown initial state kind '" + st.kind + "'");
    }
    if (st.mass > 0.0) normalize(f, std::sqrt(st.mass));
    return f;
}

}  // namespace

ScalarField build_initial_state(const SimConfig& cfg) {
    return build_scalar_state(cfg.initial_state, cfg, cfg.grid());
}

SpinorField build_initial_pauli_state(const SimConfig& cfg) {
    const Grid grid = cfg.grid();
    SimConfig raw = cfg;
    InitialState up = cfg.pauli_state.up;
    InitialState down = cfg.pauli_state.down;
    // joint normalization happens below; keep component weights as sampled
    SpinorField f(build_scalar_state(up, raw, grid), build_scalar_state(down, raw, grid));
    if (cfg.pauli_state.mass > 0.0) normalize(f, std::sqrt(cfg.pauli_state.mass));
    return f;
}

namespace {

int substep_pieces(double B, double dt) {
    const double theta = std::abs(B * dt);
    if (theta <= 0.25 * kPi) return 1;
    return static_cast<int>(std::ceil(theta / (0.25 * kPi)));
}

template <typename FieldT>
ObservableRow observe_state(const FieldT& f, double t, const SimConfig& cfg) {
    return observe(f, t, cfg.mu, cfg.p, cfg.B);
}

template <typename FieldT, typename Sink>
EvolveResult<FieldT> evolve_impl(const SimConfig& cfg, FieldT psi, const Sink& sink) {
    cfg.validate();
    require_resolved(psi, cfg.boundary_tol, "initial state");

    EvolveResult<FieldT> result{{}, {}, psi, cfg.dt};
    ObservableRow first = observe_state(psi, 0.0, cfg);
    result.series.push_back(first);
    if (sink && cfg.snapshot_stride > 0) sink(0, 0.0, psi);

    double dt = cfg.dt;
    int pieces = substep_pieces(cfg.B, dt);
    PropagatorPlan plan = make_propagator_plan(psi.grid(), cfg.B, dt / pieces);
    SimConfig step_cfg = cfg;

    double t = 0.0;
    std::size_t step = 0;
    double kinetic_ref = first.kinetic;
    const double t_stop = cfg.t_end * (1.0 - 1e-12);
    while (t < t_stop) {
        step_cfg.dt = dt;
        strang_step(psi, step_cfg, plan, pieces);
        t += dt;
        ++step;
        const bool record = step % cfg.observable_stride == 0 || t >= t_stop;
        if (sink && cfg.snapshot_stride > 0 && step % cfg.snapshot_stride == 0) sink(step, t, psi);
        if (!record) continue;
        ObservableRow row = observe_state(psi, t, cfg);
        result.series.push_back(row);
        const std::string trigger =
            detect_blowup(row, first, cfg.kinetic_ratio_threshold, cfg.variance_floor);
        if (!trigger.empty()) {
            result.report.detected = true;
            result.report.t_detect = t;
            result.report.trigger = trigger;
            result.report.kinetic_ratio = first.kinetic > 0.0 ? row.kinetic / first.kinetic : 0.0;
            result.report.last = row;
            break;
        }
        // kinetic-energy controller: halve dt whenever T doubles
        if (std::isfinite(row.kinetic) && row.kinetic > 2.0 * kinetic_ref) {
            dt *= 0.5;
            pieces = substep_pieces(cfg.B, dt);
            plan = make_propagator_plan(psi.grid(), cfg.B, dt / pieces);
            kinetic_ref = row.kinetic;
        }
    }
    if (!result.report.detected) result.report.last = result.series.back();
    result.final_state = std::move(psi);
    result.dt_final = dt;
    return result;
}

}  // namespace

EvolveResult<ScalarField> evolve(const SimConfig& cfg, const SnapshotSink& sink) {
    return evolve_impl<ScalarField>(cfg, build_initial_state(cfg), sink);
}

EvolveResult<SpinorField> evolve_pauli(const SimConfig& cfg, const SpinorSnapshotSink& sink) {
    return evolve_impl<SpinorField>(cfg, build_initial_pauli_state(cfg), sink);
}

}  // namespace magnls
