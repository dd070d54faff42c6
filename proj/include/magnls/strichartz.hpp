#pragma once

#include <functional>

#include "magnls/field.hpp"

namespace magnls {

using Evolver = std::function<ScalarField(const ScalarField& psi0, double t)>;

Evolver mehler_evolver(double B);
Evolver free_evolver();

struct NodeDiagnostic {
    double t = 0.0;
    double norm_r = 0.0;
    double boundary_fraction = 0.0;
};

/// ( int_(t0,t1) ||psi(t)||_r^q dt )^{1/q} by Gauss-Legendre quadrature on the
/// open interval; q = inf returns the sup over nodes. Throws GuardError when
/// a node state fails the boundary-mass guard.
double spacetime_norm(const Evolver& evolver, const ScalarField& psi0, double q, double r,
                      double t0, double t1, int nodes,
                      std::vector<NodeDiagnostic>* diagnostics = nullptr,
                      double guard_tol = 1e-10);

struct StrichartzReport {
    double q = 4.0;
    double r = 4.0;
    double B = 1.0;
    int nodes = 64;
    double lhs = 0.0;        // || M(t) psi0 ||_{L^q_t L^r_x((0, pi/B) x R^2)}
    double rhs = 0.0;        // (4 pi)^{1 - 4/q} || e^{it Lap} psi0 ||_{L^q_t L^r_x(R x R^2)}
    double prefactor = 1.0;  // (4 pi)^{1 - 4/q}
    double rel_gap = 0.0;
    double free_window = 0.0;         // free-side truncation half-width (grid route)
    double free_tail_estimate = 0.0;  // dispersive-decay tail added to the window
    bool free_side_closed_form = false;
    std::vector<NodeDiagnostic> lhs_nodes;
};

/// Identity check with the free side in closed form (Gaussian e^{-a|x|^2}).
StrichartzReport verify_identity_gaussian(const Grid& grid, double a, double B, double q, double r,
                                          int nodes = 64);

/// Identity check for a general state; the free side integrates the grid
/// evolution over |t| <= window and adds a measured dispersive tail estimate.
StrichartzReport verify_identity(const ScalarField& psi0, double B, double q, double r,
                                 int nodes = 64, double window = 40.0);

/// Closed-form free evolution of e^{-a|x|^2} sampled on the grid (2D).
ScalarField free_gaussian_evolution(const Grid& grid, double a, double t);

/// ||e^{it Lap} e^{-a|x|^2}||_{L^q_t L^r_x(R x R^2)} in closed form.
double free_gaussian_spacetime_norm(double a, double q, double r);

}  // namespace magnls
