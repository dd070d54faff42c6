#include "magnls/rotation.hpp"

#include <cmath>

#include "magnls/transforms.hpp"

namespace magnls {

namespace {

// out(x1,x2) = in(-x2, x1), one n x n slice; wraps the Nyquist row periodically.
void quarter_turn_slice(const c64* in, c64* out, std::size_t n) {
    for (std::size_t j2 = 0; j2 < n; ++j2) {
        // x1' = -c2(j2): index of -c with wrap
        const std::size_t j1p = (n - j2 + n / 2 + n / 2) % n;  // index(-(j2 - n/2))
        for (std::size_t j1 = 0; j1 < n; ++j1) {
            // x2' = c1(j1): row index j1
            out[j2 * n + j1] = in[j1 * n + j1p];
        }
    }
}

// f(x1 + a x2, x2): per-row fractional shift along axis 1
void shear_axis1_slice(c64* slice, const Grid& g, const std::vector<c64>& tab) {
    const std::size_t n = g.n();
    checkerboard_axis(slice, g, 0);  // grid dim used only for size; see caller
    fft_axis_inplace(slice, g, 0, -1);
    for (std::size_t j2 = 0; j2 < n; ++j2)
        kernels::ops().cmul(slice + j2 * n, tab.data() + j2 * n, n);
    fft_axis_inplace(slice, g, 0, +1);
    checkerboard_axis(slice, g, 0);
}

// f(x1, x2 + b x1): per-column fractional shift along axis 2
void shear_axis2_slice(c64* slice, const Grid& g, const std::vector<c64>& tab) {
    const std::size_t n = g.n();
    checkerboard_axis(slice, g, 1);
    fft_axis_inplace(slice, g, 1, -1);
    for (std::size_t m2 = 0; m2 < n; ++m2)
        for (std::size_t j1 = 0; j1 < n; ++j1) slice[m2 * n + j1] *= tab[j1 * n + m2];
    fft_axis_inplace(slice, g, 1, +1);
    checkerboard_axis(slice, g, 1);
}

}  // namespace

void split_rotation(double phi, int& quarter_turns, double& residual) {
    quarter_turns = static_cast<int>(std::lround(phi / (0.5 * kPi)));
    residual = phi - quarter_turns * (0.5 * kPi);
    quarter_turns = ((quarter_turns % 4) + 4) % 4;
}

ShearTables make_shear_tables(const Grid& grid, double residual_angle) {
    ShearTables t;
    t.angle = residual_angle;
    const std::size_t n = grid.n();
    const double a = -std::tan(0.5 * residual_angle);
    const double b = std::sin(residual_angle);
    const double inv_n = 1.0 / static_cast<double>(n);
    t.shear1.resize(n * n);
    t.shear2.resize(n * n);
    const auto& xs = grid.coords();
    const auto& ks = grid.freqs();
    for (std::size_t row = 0; row < n; ++row)
        for (std::size_t m = 0; m < n; ++m) {
            t.shear1[row * n + m] = std::polar(inv_n, kTwoPi * ks[m] * a * xs[row]);
            t.shear2[row * n + m] = std::polar(inv_n, kTwoPi * ks[m] * b * xs[row]);
        }
    return t;
}

void rotate_inplace(ScalarField& f, int quarter_turns, const ShearTables& tables) {
    const Grid& g = f.grid();
    const std::size_t n = g.n();
    const std::size_t nslices = g.dim() == 3 ? n : 1;
    const std::size_t slice_len = n * n;
    // A 2D sub-grid drives the per-slice transforms; for dim 2 it is g itself.
    const Grid plane = g.dim() == 2 ? g : Grid(2, n, g.extent());

    parallel_for(nslices, [&](std::size_t b, std::size_t e) {
        std::vector<c64> scratch(slice_len);
        for (std::size_t s = b; s < e; ++s) {
            c64* slice = f.data() + s * slice_len;
            for (int q = 0; q < quarter_turns; ++q) {
                quarter_turn_slice(slice, scratch.data(), n);
                std::copy(scratch.begin(), scratch.end(), slice);
            }
            if (tables.angle != 0.0) {
                shear_axis1_slice(slice, plane, tables.shear1);
                shear_axis2_slice(slice, plane, tables.shear2);
                shear_axis1_slice(slice, plane, tables.shear1);
            }
        }
    });
}

void rotate_inplace(ScalarField& f, double phi) {
    int q;
    double r;
    split_rotation(phi, q, r);
    const Grid plane = f.grid().dim() == 2 ? f.grid() : Grid(2, f.grid().n(), f.grid().extent());
    ShearTables tables = make_shear_tables(plane, r);
    rotate_inplace(f, q, tables);
}

}  // namespace magnls
