#include <immintrin.h>

#include "magnls/kernels.hpp"

namespace magnls::kernels {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// sum of even lanes minus sum of odd lanes
inline double hsum_evens_minus_odds(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);  // (e0+e2, o1+o3)
    return _mm_cvtsd_f64(_mm_sub_sd(s, _mm_unpackhi_pd(s, s)));
}

void cmul_avx2(c64* a, const c64* b, std::size_t n) {
    double* ap = reinterpret_cast<double*>(a);
    const double* bp = reinterpret_cast<const double*>(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(ap + 2 * i);
        __m256d vb = _mm256_loadu_pd(bp + 2 * i);
        __m256d bre = _mm256_movedup_pd(vb);
        __m256d bim = _mm256_permute_pd(vb, 0xF);
        __m256d asw = _mm256_permute_pd(va, 0x5);
        __m256d res = _mm256_fmaddsub_pd(va, bre, _mm256_mul_pd(asw, bim));
        _mm256_storeu_pd(ap + 2 * i, res);
    }
    for (; i < n; ++i) a[i] *= b[i];
}

void cscale_avx2(c64* a, c64 s, std::size_t n) {
    double* ap = reinterpret_cast<double*>(a);
    __m256d bre = _mm256_set1_pd(s.real());
    __m256d bim = _mm256_set1_pd(s.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(ap + 2 * i);
        __m256d asw = _mm256_permute_pd(va, 0x5);
        __m256d res = _mm256_fmaddsub_pd(va, bre, _mm256_mul_pd(asw, bim));
        _mm256_storeu_pd(ap + 2 * i, res);
    }
    for (; i < n; ++i) a[i] *= s;
}

double sum_abs2_avx2(const c64* a, std::size_t n) {
    const double* ap = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(ap + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double re = a[i].real(), im = a[i].imag();
        s += re * re + im * im;
    }
    return s;
}

double sum_abs2_weighted_avx2(const c64* a, const double* w, std::size_t n) {
    const double* ap = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(ap + 2 * i);
        __m128d wv = _mm_loadu_pd(w + i);
        __m256d wd = _mm256_permute4x64_pd(_mm256_castpd128_pd256(wv), 0x50);  // (w0,w0,w1,w1)
        acc = _mm256_fmadd_pd(_mm256_mul_pd(v, v), wd, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double re = a[i].real(), im = a[i].imag();
        s += w[i] * (re * re + im * im);
    }
    return s;
}

c64 dot_conj_avx2(const c64* a, const c64* b, std::size_t n) {
    const double* ap = reinterpret_cast<const double*>(a);
    const double* bp = reinterpret_cast<const double*>(b);
    __m256d accp = _mm256_setzero_pd();  // lanes: ar*br, ai*bi -> re = sum all
    __m256d accq = _mm256_setzero_pd();  // lanes: ar*bi, ai*br -> im = evens - odds
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(ap + 2 * i);
        __m256d vb = _mm256_loadu_pd(bp + 2 * i);
        accp = _mm256_fmadd_pd(va, vb, accp);
        accq = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), accq);
    }
    double re = hsum(accp);
    double im = hsum_evens_minus_odds(accq);
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double max_abs2_avx2(const c64* a, std::size_t n) {
    const double* ap = reinterpret_cast<const double*>(a);
    __m256d mx = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(ap + 2 * i);
        __m256d sq = _mm256_mul_pd(v, v);
        __m256d ab = _mm256_hadd_pd(sq, sq);  // (|z0|^2,|z0|^2,|z1|^2,|z1|^2)
        mx = _mm256_max_pd(mx, ab);
    }
    __m128d lo = _mm256_castpd256_pd128(mx);
    __m128d hi = _mm256_extractf128_pd(mx, 1);
    __m128d m = _mm_max_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
    for (; i < n; ++i) {
        const double re = a[i].real(), im = a[i].imag();
        const double v = re * re + im * im;
        if (v > s) s = v;
    }
    return s;
}

const Ops kAvx2 = {
    cmul_avx2, cscale_avx2, sum_abs2_avx2, sum_abs2_weighted_avx2,
    dot_conj_avx2, max_abs2_avx2, "avx2",
};

}  // namespace

const Ops& avx2_ops() { return kAvx2; }

}  // namespace magnls::kernels
