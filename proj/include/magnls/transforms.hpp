#pragma once

#include "magnls/field.hpp"

namespace magnls {

/// Low-level in-place DFTs (FFTW behind a plan cache; FFTW_ESTIMATE planning
/// keeps results independent of timing so artifacts stay byte-reproducible).
/// sign: -1 forward (e^{-2 pi i jk/n}), +1 backward, both unnormalized.
void fft_inplace(c64* data, const Grid& grid, int sign);
void fft_axis_inplace(c64* data, const Grid& grid, int axis, int sign);
void fft1d_inplace(c64* data, std::size_t n, int sign);

/// Multiply by (-1)^(j1+j2[+j3]) (full) or (-1)^(j_axis) (one axis); these
/// re-center the DFT between the lattice {-n/2..n/2-1} and FFT index order.
void checkerboard(c64* data, const Grid& grid);
void checkerboard_axis(c64* data, const Grid& grid, int axis);

/// Discrete approximation of (Ff)(k) = int e^{-2 pi i k.x} f(x) dx on the
/// dual lattice, ascending k order, scaled by h^dim.
ScalarField forward_transform(const ScalarField& f);
ScalarField inverse_transform(const ScalarField& F);

/// Multiply frequency samples in place given a per-axis symbol table;
/// phase(i) receives the flattened frequency index.
/// Used internally by the propagators.

/// p_a psi = -i d_a psi computed spectrally (a in {1..dim}).
ScalarField spectral_momentum(const ScalarField& f, int axis);

/// Apply a diagonal-in-frequency multiplier m(k) given per-axis frequency
/// tables: out = F^{-1}[ m(k) F f ].  The multiplier is supplied already
/// tabulated over the full lattice in ascending order.
void apply_spectral_multiplier(ScalarField& f, const std::vector<c64>& table);

/// Tabulate e^{-4 pi^2 i t |k|^2} over the axes in `axes` (1-based); axes
/// not listed contribute nothing. Ascending k order, full lattice.
std::vector<c64> free_phase_table(const Grid& grid, double t, const std::vector<int>& axes);

}  // namespace magnls
