#pragma once

#include <cstddef>

#include "magnls/common.hpp"

namespace magnls::kernels {

/// Arithmetic inner loops used across the propagators and observables.
/// Each operation has a scalar reference implementation plus SIMD variants
/// (AVX2 on x86-64, NEON on aarch64) selected once at runtime; the variants
/// are equivalence-tested against the scalar path in tests/test_kernels.cpp.
struct Ops {
    // a[i] *= b[i]
    void (*cmul)(c64* a, const c64* b, std::size_t n);
    // a[i] *= s
    void (*cscale)(c64* a, c64 s, std::size_t n);
    // sum |a[i]|^2
    double (*sum_abs2)(const c64* a, std::size_t n);
    // sum w[i] |a[i]|^2
    double (*sum_abs2_weighted)(const c64* a, const double* w, std::size_t n);
    // sum conj(a[i]) b[i]
    c64 (*dot_conj)(const c64* a, const c64* b, std::size_t n);
    // max |a[i]|^2
    double (*max_abs2)(const c64* a, std::size_t n);
    const char* name;
};

/// Active implementation (runtime-dispatched; override with MAGNLS_SIMD=scalar).
const Ops& ops();

/// Reference implementation, always available.
const Ops& scalar_ops();

/// All implementations compiled into this binary (for equivalence tests).
std::vector<const Ops*> available_ops();

}  // namespace magnls::kernels
