#include "magnls/field.hpp"

#include <cmath>
#include <string>

namespace magnls {

ScalarField::ScalarField(Grid grid, std::vector<c64> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("field values length does not match grid size");
}

SpinorField::SpinorField(ScalarField up, ScalarField down)
    : up_(std::move(up)), down_(std::move(down)) {
    if (up_.grid() != down_.grid())
        throw std::invalid_argument("spinor components must share a grid");
}

bool ScalarField::finite() const {
    for (const c64& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

c64 inner_product(const ScalarField& f, const ScalarField& g) {
    if (f.grid() != g.grid()) throw std::invalid_argument("inner_product: grid mismatch");
    return f.grid().cell_volume() * kernels::ops().dot_conj(f.data(), g.data(), f.size());
}

c64 inner_product(const SpinorField& f, const SpinorField& g) {
    return inner_product(f.up(), g.up()) + inner_product(f.down(), g.down());
}

namespace {

double lq_from_abs2_sums(const Grid& grid, double q, double sum_pow, double max_abs2) {
    if (q == std::numeric_limits<double>::infinity()) return std::sqrt(max_abs2);
    return std::pow(grid.cell_volume() * sum_pow, 1.0 / q);
}

double sum_abs_pow(const c64* a, std::size_t n, double q) {
    double acc = 0.0;
    if (q == 2.0) return kernels::ops().sum_abs2(a, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a2 = std::norm(a[i]);
        acc += std::pow(a2, 0.5 * q);
    }
    return acc;
}

}  // namespace

double lq_norm(const ScalarField& f, double q) {
    if (q < 1.0) throw std::invalid_argument("lq_norm: q must be >= 1");
    if (q == std::numeric_limits<double>::infinity())
        return std::sqrt(kernels::ops().max_abs2(f.data(), f.size()));
    return lq_from_abs2_sums(f.grid(), q, sum_abs_pow(f.data(), f.size(), q), 0.0);
}

double lq_norm(const SpinorField& f, double q) {
    if (q < 1.0) throw std::invalid_argument("lq_norm: q must be >= 1");
    const std::size_t n = f.up().size();
    const c64* u = f.up().data();
    const c64* d = f.down().data();
    if (q == std::numeric_limits<double>::infinity()) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::norm(u[i]) + std::norm(d[i]));
        return std::sqrt(m);
    }
    if (q == 2.0)
        return std::sqrt(f.grid().cell_volume() *
                         (kernels::ops().sum_abs2(u, n) + kernels::ops().sum_abs2(d, n)));
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::pow(std::norm(u[i]) + std::norm(d[i]), 0.5 * q);
    return std::pow(f.grid().cell_volume() * acc, 1.0 / q);
}

double lp1_power(const ScalarField& f, double p) {
    return f.grid().cell_volume() * sum_abs_pow(f.data(), f.size(), p + 1.0);
}

double lp1_power(const SpinorField& f, double p) {
    const std::size_t n = f.up().size();
    const c64* u = f.up().data();
    const c64* d = f.down().data();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += std::pow(std::norm(u[i]) + std::norm(d[i]), 0.5 * (p + 1.0));
    return f.grid().cell_volume() * acc;
}

double mass(const ScalarField& f) {
    return f.grid().cell_volume() * kernels::ops().sum_abs2(f.data(), f.size());
}

double mass(const SpinorField& f) { return mass(f.up()) + mass(f.down()); }

namespace {

double boundary_sum_abs2(const ScalarField& f) {
    const Grid& g = f.grid();
    const std::size_t n = g.n();
    const c64* v = f.data();
    double acc = 0.0;
    if (g.dim() == 2) {
        for (std::size_t j = 0; j < n; ++j) {
            acc += std::norm(v[j]);                     // j2 = 0
            acc += std::norm(v[(n - 1) * n + j]);       // j2 = n-1
        }
        for (std::size_t j2 = 1; j2 + 1 < n; ++j2) {
            acc += std::norm(v[j2 * n]);                // j1 = 0
            acc += std::norm(v[j2 * n + n - 1]);        // j1 = n-1
        }
    } else {
        std::size_t idx = 0;
        for (std::size_t j3 = 0; j3 < n; ++j3)
            for (std::size_t j2 = 0; j2 < n; ++j2)
                for (std::size_t j1 = 0; j1 < n; ++j1, ++idx) {
                    const bool edge = j1 == 0 || j1 == n - 1 || j2 == 0 || j2 == n - 1 ||
                                      j3 == 0 || j3 == n - 1;
                    if (edge) acc += std::norm(v[idx]);
                }
    }
    return acc;
}

}  // namespace

double boundary_mass(const ScalarField& f) { return f.grid().cell_volume() * boundary_sum_abs2(f); }

double boundary_mass(const SpinorField& f) { return boundary_mass(f.up()) + boundary_mass(f.down()); }

void require_resolved(const ScalarField& f, double tol, const char* what) {
    const double m = mass(f);
    const double bm = boundary_mass(f);
    if (!(m > 0.0) || bm > tol * m)
        throw GuardError(std::string(what) + ": boundary mass " + std::to_string(bm) +
                         " exceeds " + std::to_string(tol) + " * mass " + std::to_string(m));
}

void require_resolved(const SpinorField& f, double tol, const char* what) {
    const double m = mass(f);
    const double bm = boundary_mass(f);
    if (!(m > 0.0) || bm > tol * m)
        throw GuardError(std::string(what) + ": boundary mass " + std::to_string(bm) +
                         " exceeds " + std::to_string(tol) + " * mass " + std::to_string(m));
}

void normalize(ScalarField& f, double value) {
    const double m = std::sqrt(mass(f));
    if (!(m > 0.0)) throw std::invalid_argument("normalize: zero field");
    kernels::ops().cscale(f.data(), c64{value / m, 0.0}, f.size());
}

void normalize(SpinorField& f, double value) {
    const double m = std::sqrt(mass(f));
    if (!(m > 0.0)) throw std::invalid_argument("normalize: zero spinor");
    kernels::ops().cscale(f.up().data(), c64{value / m, 0.0}, f.up().size());
    kernels::ops().cscale(f.down().data(), c64{value / m, 0.0}, f.down().size());
}

}  // namespace magnls
