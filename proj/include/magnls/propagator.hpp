#pragma once

#include "magnls/field.hpp"
#include "magnls/rotation.hpp"

namespace magnls {

/// Closed-form integral kernel of the 2D uniform-field propagator
/// e^{-it(p+A)^2}, A = B x_perp / 2:
///
///   M(x, y, t) = B / (4 pi i sin(Bt)) *
///                exp{ (iB/4) (cot(Bt) |x-y|^2 + 2 (x1 y2 - x2 y1)) }
///
/// The i in the prefactor and the sign of the exponent are pinned by the
/// t->0 free limit, the group law and the lowest-Landau eigenphase e^{-iBt};
/// tests/test_propagator.cpp nails all three.
c64 mehler_kernel_value(double x1, double x2, double y1, double y2, double t, double B);

/// Throws std::domain_error when |Bt| is within 1e-8 of a multiple of pi.
void require_nonsingular_time(double t, double B);

/// O(N^4) reference: (Mf)(x) = h^2 sum_y M(x,y,t) f(y). 2D only.
ScalarField apply_mehler_dense(const ScalarField& f, double t, double B);

/// Cached tables for one linear substep at fixed (B, t); |Bt| <= pi/4.
struct PropagatorPlan {
    Grid grid;
    double B = 0.0;
    double t = 0.0;
    // spectral (production) path
    double gamma = 0.0;             // (B/4) tan(Bt/2)
    double b = 0.0;                 // sin(Bt)/B, the free-step duration
    std::vector<c64> chirp2d;       // e^{-i gamma (x1^2+x2^2)}, one transverse slice
    std::vector<c64> spec2d;        // e^{-4 pi^2 i b (k1^2+k2^2)} / N, fft order
    std::vector<c64> axis3;         // e^{-4 pi^2 i t k3^2}, fft order (dim 3)
    int quarter_turns = 0;          // rotation by -Bt, split
    ShearTables shear;
    // exact kernel-sum path (2D); empty when sin(Bt) = 0 or B = 0
    double czt_w = 0.0;             // B h^2 / (4 pi sin(Bt))
    std::vector<c64> cot_chirp;     // e^{+i(B/4)cot(Bt) rho^2}
    std::vector<c64> czt_pre;       // e^{-pi i w_c j^2}, centered j, w_c = w cos(Bt)
    std::vector<c64> czt_kernel_fft;  // FFT of e^{+pi i w_c l^2}, length 2n, scaled 1/(2n)
    std::vector<c64> stage2;        // [j2*n + i1]: e^{+2 pi i w_s i1 j2}, centered
    c64 prefactor{0.0, 0.0};        // B / (4 pi i sin(Bt)) * h^2
};

PropagatorPlan make_propagator_plan(const Grid& grid, double B, double t);

/// Production linear substep: exact factorization
///   M(t) = Rot(Bt) o chirp(gamma) o e^{i b Laplacian} o chirp(gamma)
/// evaluated with FFTs and three-shear rotation; spectrally exact on
/// resolved fields, uniformly in |Bt| <= pi/4 including B -> 0.
void apply_mehler_spectral(ScalarField& f, const PropagatorPlan& plan);

/// The chirp-transform path: evaluates F g on the scaled, rotated lattice
/// via per-row modulated Bluestein transforms. Algebraically identical to
/// apply_mehler_dense for every input (roundoff only), at O(n^3 log n).
ScalarField apply_mehler_fast(const ScalarField& f, const PropagatorPlan& plan);

/// Free dispersive phase e^{-4 pi^2 i t |k|^2} along the given (1-based) axes.
ScalarField free_propagator(const ScalarField& f, double t, const std::vector<int>& axes);

/// Exact linear evolution U_S(t): the 2D magnetic propagator, with the
/// axis-3 free factor composed in for 3D. Arbitrary t; reduces Bt mod pi
/// (half-period parity M(pi/B) = -I) and splits so each substep satisfies
/// |B dt| <= pi/4.
ScalarField apply_us(const ScalarField& f, double t, double B);

/// Pauli linear evolution U_P(t) = e^{-iBt sigma3} U_S(t).
SpinorField apply_up(const SpinorField& f, double t, double B);

/// (sign, reduced time): Bt = sign-tracked reduction into (-pi/2, pi/2].
void reduce_half_period(double t, double B, double& t_reduced, double& sign);

}  // namespace magnls
