#pragma once

#include "magnls/dynamics.hpp"
#include "magnls/oracles.hpp"

namespace magnls {

/// The Pauli variance obeys the same closed form with F_P in the F0 slot.
double exact_variance_pauli(const VarianceParams& params, double t);
std::optional<double> first_zero_pauli(const VarianceParams& params);
BlowupVerdict blowup_sufficient_pauli(double f_p0, double gdot0, double mu, double p, int d);

/// <[sigma.(p+A)]^2 psi, psi> = <(p+A)^2 psi, psi> + B <sigma_3 psi, psi>,
/// returned as (lhs, rhs) for the algebraic identity check.
std::pair<double, double> pauli_square_identity(const SpinorField& f, double B);

}  // namespace magnls
