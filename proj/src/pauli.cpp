#include "magnls/pauli.hpp"

namespace magnls {

double exact_variance_pauli(const VarianceParams& params, double t) {
    return exact_variance(params, t);
}

std::optional<double> first_zero_pauli(const VarianceParams& params) { return first_zero(params); }

BlowupVerdict blowup_sufficient_pauli(double f_p0, double gdot0, double mu, double p, int d) {
    return blowup_sufficient(f_p0, gdot0, mu, p, d);
}

std::pair<double, double> pauli_square_identity(const SpinorField& f, double B) {
    const double lhs = kinetic_p(f, B);
    const double rhs = kinetic_s(f.up(), B) + kinetic_s(f.down(), B) + B * spin_z(f);
    return {lhs, rhs};
}

}  // namespace magnls
