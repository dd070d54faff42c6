#include "magnls/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace magnls::kernels {

namespace {

void cmul_scalar(c64* a, const c64* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
}

void cscale_scalar(c64* a, c64 s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

double sum_abs2_scalar(const c64* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = a[i].real(), im = a[i].imag();
        acc += re * re + im * im;
    }
    return acc;
}

double sum_abs2_weighted_scalar(const c64* a, const double* w, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = a[i].real(), im = a[i].imag();
        acc += w[i] * (re * re + im * im);
    }
    return acc;
}

c64 dot_conj_scalar(const c64* a, const c64* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double max_abs2_scalar(const c64* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = a[i].real(), im = a[i].imag();
        const double v = re * re + im * im;
        if (v > m) m = v;
    }
    return m;
}

const Ops kScalar = {
    cmul_scalar, cscale_scalar, sum_abs2_scalar, sum_abs2_weighted_scalar,
    dot_conj_scalar, max_abs2_scalar, "scalar",
};

const Ops* pick() {
    const char* force = std::getenv("MAGNLS_SIMD");
    if (force != nullptr && std::strcmp(force, "scalar") == 0) return &kScalar;
#if defined(MAGNLS_HAVE_AVX2_SOURCES)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        extern const Ops& avx2_ops();
        if (force == nullptr || std::strcmp(force, "avx2") == 0) return &avx2_ops();
    }
#elif defined(MAGNLS_HAVE_NEON_SOURCES)
    extern const Ops& neon_ops();
    if (force == nullptr || std::strcmp(force, "neon") == 0) return &neon_ops();
#endif
    return &kScalar;
}

}  // namespace

const Ops& scalar_ops() { return kScalar; }

const Ops& ops() {
    static const Ops* active = pick();
    return *active;
}

std::vector<const Ops*> available_ops() {
    std::vector<const Ops*> all = {&kScalar};
#if defined(MAGNLS_HAVE_AVX2_SOURCES)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        extern const Ops& avx2_ops();
        all.push_back(&avx2_ops());
    }
#elif defined(MAGNLS_HAVE_NEON_SOURCES)
    extern const Ops& neon_ops();
    all.push_back(&neon_ops());
#endif
    return all;
}

}  // namespace magnls::kernels
