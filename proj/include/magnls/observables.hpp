#pragma once

#include <optional>

#include "magnls/field.hpp"

namespace magnls {

/// (p + A)psi in the symmetric gauge A = B x_perp / 2, one component per axis.
std::vector<ScalarField> covariant_gradient(const ScalarField& f, double B);

double kinetic_s(const ScalarField& f, double B);
double energy_s(const ScalarField& f, double mu, double p, double B);

/// Gauge-invariant conserved functional, computed both as written
/// (E_S - B Re<x_perp psi,(p+A)psi> + B^2/2 ||rho psi||^2) and through the
/// symmetric-gauge reduction E_0 + (B^2/4)||rho psi||^2; throws
/// ConsistencyError when the two disagree beyond 1e-10 relative.
double f_s(const ScalarField& f, double mu, double p, double B);

double l3_expectation(const ScalarField& f);
double variance_g(const ScalarField& f);
double gdot(const ScalarField& f, double B);
double rho_norm_sq(const ScalarField& f);

/// Re<x_perp psi, (p+A) psi>; the angular cross term of F_S.
double xperp_cross(const ScalarField& f, double B);

/// Re<sigma.x_perp psi, sigma.(p+A) psi>; the Pauli analogue.
double sigma_cross(const SpinorField& f, double B);

/// 2 F_S0 + mu d (p - (1+4/d))/(p+1) ||psi||_{p+1}^{p+1} - B^2 ||rho psi||^2.
double virial_rhs_s(const ScalarField& f, double mu, double p, double B, double f_s0);

// --- Pauli analogues ---------------------------------------------------------

/// sigma.(p+A) psi with the standard Pauli matrices; d=2 uses (sigma1, sigma2).
SpinorField sigma_covariant(const SpinorField& f, double B);

double kinetic_p(const SpinorField& f, double B);
double energy_p(const SpinorField& f, double mu, double p, double B);
double f_p(const SpinorField& f, double mu, double p, double B);
double spin_z(const SpinorField& f);
double l3_expectation(const SpinorField& f);
double variance_g(const SpinorField& f);
double gdot(const SpinorField& f, double B);
double rho_norm_sq(const SpinorField& f);
double virial_rhs_p(const SpinorField& f, double mu, double p, double B, double f_p0);

// --- recorded series ----------------------------------------------------------

struct PauliExtra {
    double t_p = 0.0;
    double e_p = 0.0;
    double f_p = 0.0;
    double spin = 0.0;  // <sigma_3>
};

struct ObservableRow {
    double t = 0.0;
    double mass = 0.0;
    double kinetic = 0.0;   // T_S (component sum on spinors)
    double energy = 0.0;    // E_S
    double conserved = 0.0; // F_S (equals F_P on spinors; Zeeman terms cancel)
    double l3 = 0.0;
    double g = 0.0;
    double gdot = 0.0;
    double lp1 = 0.0;       // ||psi||_{p+1}^{p+1}
    double boundary = 0.0;
    double rho2 = 0.0;      // ||rho psi||^2 (not a CSV column; virial bookkeeping)
    std::optional<PauliExtra> pauli = std::nullopt;
};

using ObservableSeries = std::vector<ObservableRow>;

ObservableRow observe(const ScalarField& f, double t, double mu, double p, double B);
ObservableRow observe(const SpinorField& f, double t, double mu, double p, double B);

}  // namespace magnls
