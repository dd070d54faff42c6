#pragma once

#include <functional>
#include <string>

#include "magnls/observables.hpp"
#include "magnls/propagator.hpp"

namespace magnls {

/// Initial-state menu; `kind` selects which parameters apply.
struct InitialState {
    std::string kind = "gaussian";  // gaussian | lowest-landau | paper-example | file | zero
    std::vector<double> center = {0.0, 0.0, 0.0};
    double width = 1.0;                      // gaussian sigma; axis-3 width for lowest-landau 3D
    std::vector<double> momentum = {0.0, 0.0, 0.0};  // e^{2 pi i k0.(x-x0)} boost, cycles
    int charge = 0;                          // angular momentum factor ((x1-c1) +- i(x2-c2))^|m|
    double mass = 1.0;                       // L^2 normalization target (0 keeps raw samples)
    std::string path;                        // snapshot path for kind = file
};

struct PauliInitialState {
    InitialState up;
    InitialState down;
    double mass = 1.0;  // joint normalization target (0 keeps raw samples)
};

struct SimConfig {
    int dim = 2;
    std::size_t n = 128;
    double extent = 8.0;
    double p = 3.0;
    double mu = -1.0;
    double B = 2.0;
    double dt = 1e-4;
    double t_end = 1.0;
    std::size_t observable_stride = 10;
    std::size_t snapshot_stride = 0;  // 0: no snapshots
    double kinetic_ratio_threshold = 1e6;
    double variance_floor = 1e-4;
    double boundary_tol = 1e-12;
    InitialState initial_state;
    PauliInitialState pauli_state;

    void validate() const;
    Grid grid() const { return Grid(dim, n, extent); }
};

struct BlowupReport {
    bool detected = false;
    double t_detect = 0.0;
    std::string trigger;        // kinetic-growth | variance-floor | nonfinite
    double kinetic_ratio = 0.0;
    ObservableRow last;
};

/// Exact pointwise nonlinear phase psi <- e^{-i mu |psi|^{p-1} dt} psi.
void nonlinear_phase_step(ScalarField& f, double mu, double p, double dt);
void nonlinear_phase_step(SpinorField& f, double mu, double p, double dt);

/// One second-order step: half phase, exact linear substep(s), half phase.
void strang_step(ScalarField& f, const SimConfig& cfg, const PropagatorPlan& plan, int pieces);
void strang_step(SpinorField& f, const SimConfig& cfg, const PropagatorPlan& plan, int pieces);

/// Threshold detector on a recorded row; returns the trigger name or empty.
std::string detect_blowup(const ObservableRow& row, const ObservableRow& first,
                          double kinetic_ratio_threshold, double variance_floor);

ScalarField build_initial_state(const SimConfig& cfg);
SpinorField build_initial_pauli_state(const SimConfig& cfg);

template <typename FieldT>
struct EvolveResult {
    ObservableSeries series;
    BlowupReport report;
    FieldT final_state;
    double dt_final = 0.0;
};

using SnapshotSink = std::function<void(std::size_t step, double t, const ScalarField& f)>;
using SpinorSnapshotSink = std::function<void(std::size_t step, double t, const SpinorField& f)>;

EvolveResult<ScalarField> evolve(const SimConfig& cfg, const SnapshotSink& sink = {});
EvolveResult<SpinorField> evolve_pauli(const SimConfig& cfg, const SpinorSnapshotSink& sink = {});

}  // namespace magnls
