#pragma once

#include "magnls/field.hpp"

namespace magnls {

/// Precomputed row phases for the three-shear rotation at a fixed angle.
struct ShearTables {
    double angle = 0.0;
    std::vector<c64> shear1;  // [j2*n + m1]: e^{2 pi i k1(m1) a x2(j2)} / n
    std::vector<c64> shear2;  // [j1*n + m2]: e^{2 pi i k2(m2) b x1(j1)} / n
};

ShearTables make_shear_tables(const Grid& grid, double residual_angle);

/// In-place T_phi: f(x) <- f(R(phi) x) on the transverse (x1,x2) plane,
/// slice-by-slice in x3 for 3D grids. Quarter turns are exact index
/// permutations; the residual |angle| <= pi/4 uses three FFT shears, exact
/// for band-limited periodic data.
void rotate_inplace(ScalarField& f, double phi);

/// Same, but with cached tables (residual must match tables.angle).
void rotate_inplace(ScalarField& f, int quarter_turns, const ShearTables& tables);

/// Split phi into quarter turns plus residual in [-pi/4, pi/4].
void split_rotation(double phi, int& quarter_turns, double& residual);

}  // namespace magnls
