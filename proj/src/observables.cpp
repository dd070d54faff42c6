#include "magnls/observables.hpp"

#include <cmath>

#include "magnls/transforms.hpp"

namespace magnls {

namespace {

// multiply sample-wise by a coordinate, axis in {1..dim}
ScalarField coord_multiply(const ScalarField& f, int axis) {
    ScalarField out = f;
    const Grid& g = f.grid();
    const std::size_t n = g.n();
    const auto& xs = g.coords();
    std::size_t stride = 1;
    for (int a = 1; a < axis; ++a) stride *= n;
    for (std::size_t idx = 0; idx < g.size(); ++idx) out[idx] *= xs[(idx / stride) % n];
    return out;
}

std::vector<double> rho2_table(const Grid& g) {
    const std::size_t n = g.n();
    const auto& xs = g.coords();
    std::vector<double> w(g.size());
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        const double x1 = xs[idx % n];
        const double x2 = xs[(idx / n) % n];
        w[idx] = x1 * x1 + x2 * x2;
    }
    return w;
}

std::vector<double> r2_table(const Grid& g) {
    std::vector<double> w = rho2_table(g);
    if (g.dim() == 3) {
        const std::size_t n = g.n();
        const auto& xs = g.coords();
        for (std::size_t idx = 0; idx < w.size(); ++idx) {
            const double x3 = xs[idx / (n * n)];
            w[idx] += x3 * x3;
        }
    }
    return w;
}

double weighted_mass(const ScalarField& f, const std::vector<double>& w) {
    return f.grid().cell_volume() *
           kernels::ops().sum_abs2_weighted(f.data(), w.data(), f.size());
}

double norm2_sq(const ScalarField& f) {
    return f.grid().cell_volume() * kernels::ops().sum_abs2(f.data(), f.size());
}

void check_dual(double a, double b, double scale, const char* what) {
    const double ref = std::max({std::abs(a), std::abs(b), std::abs(scale)});
    if (std::abs(a - b) > 1e-10 * std::max(ref, 1e-30))
        throw ConsistencyError(std::string(what) + " dual forms disagree: " + std::to_string(a) +
                               " vs " + std::to_string(b));
}

}  // namespace

std::vector<ScalarField> covariant_gradient(const ScalarField& f, double B) {
    const Grid& g = f.grid();
    std::vector<ScalarField> out;
    out.reserve(g.dim());
    for (int axis = 1; axis <= g.dim(); ++axis) out.push_back(spectral_momentum(f, axis));
    // A = (B/2) (-x2, x1, 0)
    const std::size_t n = g.n();
    const auto& xs = g.coords();
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        const double x1 = xs[idx % n];
        const double x2 = xs[(idx / n) % n];
        out[0][idx] += -0.5 * B * x2 * f[idx];
        out[1][idx] += +0.5 * B * x1 * f[idx];
    }
    return out;
}

double kinetic_s(const ScalarField& f, double B) {
    double acc = 0.0;
    for (const ScalarField& c : covariant_gradient(f, B)) acc += norm2_sq(c);
    return acc;
}

double energy_s(const ScalarField& f, double mu, double p, double B) {
    return kinetic_s(f, B) + (2.0 * mu / (p + 1.0)) * lp1_power(f, p);
}

namespace {

double e_zero(const ScalarField& f, double mu, double p) {
    double grad = 0.0;
    for (int axis = 1; axis <= f.grid().dim(); ++axis) grad += norm2_sq(spectral_momentum(f, axis));
    return grad + (2.0 * mu / (p + 1.0)) * lp1_power(f, p);
}

double xperp_cross_impl(const ScalarField& f, const std::vector<ScalarField>& pi) {
    return -std::real(inner_product(coord_multiply(f, 2), pi[0])) +
           std::real(inner_product(coord_multiply(f, 1), pi[1]));
}

double f_s_forms(const ScalarField& f, double mu, double p, double B, double* def_out) {
    auto pi = covariant_gradient(f, B);
    double ts = 0.0;
    for (const auto& c : pi) ts += norm2_sq(c);
    const double lp1 = lp1_power(f, p);
    const double es = ts + (2.0 * mu / (p + 1.0)) * lp1;
    const double cross = xperp_cross_impl(f, pi);
    const double rho2 = weighted_mass(f, rho2_table(f.grid()));
    const double fs_def = es - B * cross + 0.5 * B * B * rho2;
    const double fs_exp = e_zero(f, mu, p) + 0.25 * B * B * rho2;
    check_dual(fs_def, fs_exp, es, "F_S");
    if (def_out != nullptr) *def_out = fs_def;
    return fs_exp;
}

}  // namespace

double f_s(const ScalarField& f, double mu, double p, double B) {
    double def = 0.0;
    f_s_forms(f, mu, p, B, &def);
    return def;
}

double xperp_cross(const ScalarField& f, double B) {
    return xperp_cross_impl(f, covariant_gradient(f, B));
}

double l3_expectation(const ScalarField& f) {
    ScalarField p1 = spectral_momentum(f, 1);
    ScalarField p2 = spectral_momentum(f, 2);
    const c64 v = inner_product(f, coord_multiply(p2, 1)) - inner_product(f, coord_multiply(p1, 2));
    return std::real(v);
}

double variance_g(const ScalarField& f) { return 0.25 * weighted_mass(f, r2_table(f.grid())); }

double gdot(const ScalarField& f, double B) {
    auto pi = covariant_gradient(f, B);
    double acc = 0.0;
    for (int axis = 1; axis <= f.grid().dim(); ++axis)
        acc += std::real(inner_product(coord_multiply(f, axis), pi[axis - 1]));
    return acc;
}

double rho_norm_sq(const ScalarField& f) { return weighted_mass(f, rho2_table(f.grid())); }

double virial_rhs_s(const ScalarField& f, double mu, double p, double B, double f_s0) {
    const double d = f.grid().dim();
    return 2.0 * f_s0 + mu * d * ((p - (1.0 + 4.0 / d)) / (p + 1.0)) * lp1_power(f, p) -
           B * B * rho_norm_sq(f);
}

// --- Pauli -------------------------------------------------------------------

SpinorField sigma_covariant(const SpinorField& f, double B) {
    auto pu = covariant_gradient(f.up(), B);
    auto pd = covariant_gradient(f.down(), B);
    const Grid& g = f.grid();
    SpinorField out(g);
    // sigma.v psi = ( v3 psi1 + (v1 - i v2) psi2,  (v1 + i v2) psi1 - v3 psi2 )
    // with the v3 terms absent in d = 2 (sigma = (sigma1, sigma2)).
    const c64 mi{0.0, -1.0};
    const c64 pi_{0.0, 1.0};
    for (std::size_t i = 0; i < g.size(); ++i) {
        c64 a = pd[0][i] + mi * pd[1][i];
        c64 b = pu[0][i] + pi_ * pu[1][i];
        if (g.dim() == 3) {
            a += pu[2][i];
            b -= pd[2][i];
        }
        out.up()[i] = a;
        out.down()[i] = b;
    }
    return out;
}

namespace {

SpinorField sigma_xperp(const SpinorField& f, double /*B*/) {
    const Grid& g = f.grid();
    const std::size_t n = g.n();
    const auto& xs = g.coords();
    SpinorField out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double u1 = -xs[(i / n) % n];  // -x2
        const double u2 = xs[i % n];         // +x1
        const c64 m{u1, -u2};
        const c64 p{u1, u2};
        out.up()[i] = m * f.down()[i];
        out.down()[i] = p * f.up()[i];
    }
    return out;
}

double kinetic_p_forms(const SpinorField& f, double B, double* direct_out) {
    SpinorField sp = sigma_covariant(f, B);
    const double direct = norm2_sq(sp.up()) + norm2_sq(sp.down());
    const double reduced = kinetic_s(f.up(), B) + kinetic_s(f.down(), B) +
                           B * (mass(f.up()) - mass(f.down()));
    check_dual(direct, reduced, direct, "T_P");
    if (direct_out != nullptr) *direct_out = direct;
    return reduced;
}

}  // namespace

double kinetic_p(const SpinorField& f, double B) {
    double direct = 0.0;
    kinetic_p_forms(f, B, &direct);
    return direct;
}

double energy_p(const SpinorField& f, double mu, double p, double B) {
    return kinetic_p(f, B) + (2.0 * mu / (p + 1.0)) * lp1_power(f, p);
}

double sigma_cross(const SpinorField& f, double B) {
    SpinorField sx = sigma_xperp(f, B);
    SpinorField sp = sigma_covariant(f, B);
    return std::real(inner_product(sx, sp));
}

double f_p(const SpinorField& f, double mu, double p, double B) {
    const double ep = energy_p(f, mu, p, B);
    const double cross = sigma_cross(f, B);
    const double rho2 = rho_norm_sq(f);
    const double fp_def = ep - B * cross + 0.5 * B * B * rho2;
    // reduction: Re<sigma.x_perp psi, sigma.pi psi> = Re<x_perp psi, pi psi> + <sigma_3>
    const double plain_cross = xperp_cross(f.up(), B) + xperp_cross(f.down(), B);
    const double fp_red = ep - B * (plain_cross + spin_z(f)) + 0.5 * B * B * rho2;
    check_dual(fp_def, fp_red, ep, "F_P");
    return fp_def;
}

double spin_z(const SpinorField& f) { return mass(f.up()) - mass(f.down()); }

double l3_expectation(const SpinorField& f) {
    return l3_expectation(f.up()) + l3_expectation(f.down());
}

double variance_g(const SpinorField& f) { return variance_g(f.up()) + variance_g(f.down()); }

double gdot(const SpinorField& f, double B) { return gdot(f.up(), B) + gdot(f.down(), B); }

double rho_norm_sq(const SpinorField& f) { return rho_norm_sq(f.up()) + rho_norm_sq(f.down()); }

double virial_rhs_p(const SpinorField& f, double mu, double p, double B, double f_p0) {
    const double d = f.grid().dim();
    return 2.0 * f_p0 + mu * d * ((p - (1.0 + 4.0 / d)) / (p + 1.0)) * lp1_power(f, p) -
           B * B * rho_norm_sq(f);
}

ObservableRow observe(const ScalarField& f, double t, double mu, double p, double B) {
    ObservableRow row;
    row.t = t;
    row.mass = mass(f);
    row.kinetic = kinetic_s(f, B);
    row.lp1 = lp1_power(f, p);
    row.energy = row.kinetic + (2.0 * mu / (p + 1.0)) * row.lp1;
    row.conserved = f_s(f, mu, p, B);
    row.l3 = l3_expectation(f);
    row.g = variance_g(f);
    row.gdot = gdot(f, B);
    row.boundary = boundary_mass(f);
    row.rho2 = rho_norm_sq(f);
    return row;
}

ObservableRow observe(const SpinorField& f, double t, double mu, double p, double B) {
    ObservableRow row;
    row.t = t;
    row.mass = mass(f);
    row.kinetic = kinetic_s(f.up(), B) + kinetic_s(f.down(), B);
    row.lp1 = lp1_power(f, p);
    row.energy = row.kinetic + (2.0 * mu / (p + 1.0)) * row.lp1;
    // scalar-form conserved functional over both components (joint |psi|^{p+1})
    double grad = 0.0;
    for (const ScalarField* c : {&f.up(), &f.down()})
        for (int axis = 1; axis <= f.grid().dim(); ++axis)
            grad += norm2_sq(spectral_momentum(*c, axis));
    const double e0 = grad + (2.0 * mu / (p + 1.0)) * row.lp1;
    row.conserved = e0 + 0.25 * B * B * rho_norm_sq(f);
    row.l3 = l3_expectation(f);
    row.g = variance_g(f);
    row.gdot = gdot(f, B);
    row.boundary = boundary_mass(f);
    row.rho2 = rho_norm_sq(f);
    PauliExtra extra;
    extra.t_p = kinetic_p(f, B);
    extra.e_p = extra.t_p + (2.0 * mu / (p + 1.0)) * row.lp1;
    extra.f_p = f_p(f, mu, p, B);
    extra.spin = spin_z(f);
    row.pauli = extra;
    return row;
}

}  // namespace magnls
