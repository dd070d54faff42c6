#pragma once

#include <functional>
#include <optional>

#include "magnls/field.hpp"

namespace magnls {

/// Adaptive 1D quadrature (Gauss-Kronrod), transform-free; the certification
/// path so closed-form constants never share code with the grid pipeline.
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    double rel_tol = 1e-12);

struct VarianceParams {
    double f0 = 0.0;     // conserved F_S (or F_P) value
    double B = 0.0;      // nonzero for the oscillatory closed form
    double g0 = 0.0;     // 1/4 ||rho psi0||^2
    double gdot0 = 0.0;  // Re<x psi0, (p+A) psi0>
};

/// g(t) = F0/(2B^2) + (g0 - F0/(2B^2)) cos(2Bt) + gdot0/(2B) sin(2Bt).
double exact_variance(const VarianceParams& params, double t);

/// Smallest t > 0 with exact_variance = 0 via the amplitude-phase reduction;
/// nullopt when the amplitude never reaches the mean.
std::optional<double> first_zero(const VarianceParams& params);

enum class BlowupVerdict { BlowsUp, Inconclusive };

/// Sufficient condition: F0 < 0, or F0 = 0 with gdot0 < 0, in the focusing
/// mass-(super)critical range mu < 0, 1 + 4/d <= p < 1 + 4/(d-2).
BlowupVerdict blowup_sufficient(double f0, double gdot0, double mu, double p, int d);

/// d=2, p=3 zero-crossing condition F0 g0 < B^2 (g0^2 + gdot0^2/(4B^2)), strict.
bool blowup_condition_p3_d2(double f0, double g0, double gdot0, double B);

/// (B_min, B_max) = (|E0/L3|, 2 sqrt(|E0|)/||rho psi||) for E0 < 0, L3 < 0;
/// empty when infeasible.
std::optional<std::pair<double, double>> b_window(double e0, double l3_exp, double rho_norm_sq);

/// Schroedinger admissibility: q in [2, inf], 2/q = d(1/2 - 1/r), not (2, inf, 2).
bool admissible(double q, double r, int d);

/// Constants of the example state u(rho) = (800 rho / sqrt(pi)) e^{-400 rho^2},
/// psi0 = u e^{-i theta}, certified by the radial quadrature oracle
/// (mu = -1, p = 5).
struct ExampleCertificate {
    double mass = 0.0;
    double kinetic0 = 0.0;      // ||grad psi||^2
    double l6_power = 0.0;      // ||psi||_6^6
    double e0 = 0.0;            // kinetic0 - l6_power / 3
    double l3 = 0.0;            // -mass (L3 eigenstate, eigenvalue -1)
    double rho_norm_sq = 0.0;   // ||rho psi||^2
    double g0 = 0.0;            // rho_norm_sq / 4
    double ratio = 0.0;         // |<L3>|^2 / ||rho psi||^2
    std::optional<std::pair<double, double>> window;  // from b_window
};

ExampleCertificate certify_example();

/// The example state sampled on a 2D grid (resolution-guarded by the caller).
ScalarField paper_example_state(const Grid& grid);

}  // namespace magnls
