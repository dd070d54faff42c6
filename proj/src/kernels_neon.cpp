#include <arm_neon.h>

#include "magnls/kernels.hpp"

namespace magnls::kernels {

namespace {

// one complex double per float64x2_t: (re, im)

void cmul_neon(c64* a, const c64* b, std::size_t n) {
    double* ap = reinterpret_cast<double*>(a);
    const double* bp = reinterpret_cast<const double*>(b);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t va = vld1q_f64(ap + 2 * i);
        float64x2_t vb = vld1q_f64(bp + 2 * i);
        float64x2_t rsw = vextq_f64(va, va, 1);                 // (ai, ar)
        float64x2_t t = vmulq_laneq_f64(va, vb, 0);             // (ar*br, ai*br)
        float64x2_t u = vmulq_laneq_f64(rsw, vb, 1);            // (ai*bi, ar*bi)
        const float64x2_t sgn = {-1.0, 1.0};
        vst1q_f64(ap + 2 * i, vfmaq_f64(t, u, sgn));
    }
}

void cscale_neon(c64* a, c64 s, std::size_t n) {
    double* ap = reinterpret_cast<double*>(a);
    float64x2_t vb = {s.real(), s.imag()};
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t va = vld1q_f64(ap + 2 * i);
        float64x2_t rsw = vextq_f64(va, va, 1);
        float64x2_t t = vmulq_laneq_f64(va, vb, 0);
        float64x2_t u = vmulq_laneq_f64(rsw, vb, 1);
        const float64x2_t sgn = {-1.0, 1.0};
        vst1q_f64(ap + 2 * i, vfmaq_f64(t, u, sgn));
    }
}

double sum_abs2_neon(const c64* a, std::size_t n) {
    const double* ap = reinterpret_cast<const double*>(a);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t v = vld1q_f64(ap + 2 * i);
        acc = vfmaq_f64(acc, v, v);
    }
    return vaddvq_f64(acc);
}

double sum_abs2_weighted_neon(const c64* a, const double* w, std::size_t n) {
    const double* ap = reinterpret_cast<const double*>(a);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t v = vld1q_f64(ap + 2 * i);
        acc = vfmaq_f64(acc, vmulq_f64(v, v), vdupq_n_f64(w[i]));
    }
    return vaddvq_f64(acc);
}

c64 dot_conj_neon(const c64* a, const c64* b, std::size_t n) {
    const double* ap = reinterpret_cast<const double*>(a);
    const double* bp = reinterpret_cast<const double*>(b);
    float64x2_t accp = vdupq_n_f64(0.0);
    float64x2_t accq = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t va = vld1q_f64(ap + 2 * i);
        float64x2_t vb = vld1q_f64(bp + 2 * i);
        accp = vfmaq_f64(accp, va, vb);                    // (ar*br, ai*bi)
        accq = vfmaq_f64(accq, va, vextq_f64(vb, vb, 1));  // (ar*bi, ai*br)
    }
    return {vaddvq_f64(accp), vgetq_lane_f64(accq, 0) - vgetq_lane_f64(accq, 1)};
}

double max_abs2_neon(const c64* a, std::size_t n) {
    const double* ap = reinterpret_cast<const double*>(a);
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t v = vld1q_f64(ap + 2 * i);
        double s = vaddvq_f64(vmulq_f64(v, v));
        if (s > m) m = s;
    }
    return m;
}

const Ops kNeon = {
    cmul_neon, cscale_neon, sum_abs2_neon, sum_abs2_weighted_neon,
    dot_conj_neon, max_abs2_neon, "neon",
};

}  // namespace

const Ops& neon_ops() { return kNeon; }

}  // namespace magnls::kernels
