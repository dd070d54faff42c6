#pragma once

#include <vector>

#include "magnls/grid.hpp"
#include "magnls/kernels.hpp"

namespace magnls {

/// Complex wavefunction samples bound to a grid; x1 varies fastest.
class ScalarField {
public:
    explicit ScalarField(Grid grid) : grid_(std::move(grid)), values_(grid_.size(), c64{0.0, 0.0}) {}
    ScalarField(Grid grid, std::vector<c64> values);

    const Grid& grid() const { return grid_; }
    std::vector<c64>& values() { return values_; }
    const std::vector<c64>& values() const { return values_; }
    c64* data() { return values_.data(); }
    const c64* data() const { return values_.data(); }
    std::size_t size() const { return values_.size(); }
    c64& operator[](std::size_t i) { return values_[i]; }
    const c64& operator[](std::size_t i) const { return values_[i]; }

    bool finite() const;

private:
    Grid grid_;
    std::vector<c64> values_;
};

/// Two-component spinor (psi_1 = up, psi_2 = down) on a shared grid.
class SpinorField {
public:
    explicit SpinorField(const Grid& grid) : up_(grid), down_(grid) {}
    SpinorField(ScalarField up, ScalarField down);

    const Grid& grid() const { return up_.grid(); }
    ScalarField& up() { return up_; }
    const ScalarField& up() const { return up_; }
    ScalarField& down() { return down_; }
    const ScalarField& down() const { return down_; }
    bool finite() const { return up_.finite() && down_.finite(); }

private:
    ScalarField up_;
    ScalarField down_;
};

// --- inner products and norms -----------------------------------------------

c64 inner_product(const ScalarField& f, const ScalarField& g);
c64 inner_product(const SpinorField& f, const SpinorField& g);

/// L^q norm, q in [1, inf]; q = infinity returns the max modulus.
double lq_norm(const ScalarField& f, double q);
double lq_norm(const SpinorField& f, double q);

/// h^dim * sum |f|^(p+1) with the spinor modulus |psi| = sqrt(|psi1|^2+|psi2|^2).
double lp1_power(const ScalarField& f, double p);
double lp1_power(const SpinorField& f, double p);

double mass(const ScalarField& f);
double mass(const SpinorField& f);

/// Mass in the outermost one-cell shell; spectral accuracy assumes this is
/// negligible relative to the total mass.
double boundary_mass(const ScalarField& f);
double boundary_mass(const SpinorField& f);

/// Throws GuardError when boundary mass exceeds tol * mass.
void require_resolved(const ScalarField& f, double tol = 1e-12, const char* what = "field");
void require_resolved(const SpinorField& f, double tol = 1e-12, const char* what = "spinor");

// --- pointwise helpers -------------------------------------------------------

/// Fill from a callable of the space point: f(x1, x2[, x3]) -> c64.
template <typename F>
ScalarField sample_field(const Grid& grid, F&& fn) {
    ScalarField out(grid);
    const std::size_t n = grid.n();
    const auto& xs = grid.coords();
    if (grid.dim() == 2) {
        std::size_t idx = 0;
        for (std::size_t j2 = 0; j2 < n; ++j2)
            for (std::size_t j1 = 0; j1 < n; ++j1, ++idx) out[idx] = fn(xs[j1], xs[j2], 0.0);
    } else {
        std::size_t idx = 0;
        for (std::size_t j3 = 0; j3 < n; ++j3)
            for (std::size_t j2 = 0; j2 < n; ++j2)
                for (std::size_t j1 = 0; j1 < n; ++j1, ++idx) out[idx] = fn(xs[j1], xs[j2], xs[j3]);
    }
    return out;
}

/// out = f scaled so that ||f||_2 = value.
void normalize(ScalarField& f, double value = 1.0);
void normalize(SpinorField& f, double value = 1.0);

}  // namespace magnls
