// NEON variants for aarch64, mirroring the scalar reference op-for-op.

#include "stormfield/kernels/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cstdint>
#include <limits>

#include "exp_constants.hpp"

namespace stormfield::kernels {
namespace {

using namespace expdetail;

inline float64x2_t exp_pinned_f64(float64x2_t x) {
    const float64x2_t lo = vdupq_n_f64(kUnderflow);
    const float64x2_t hi = vdupq_n_f64(kOverflow);
    const float64x2_t xc = vmaxq_f64(vminq_f64(x, hi), lo);

    const float64x2_t pn =
        vrndmq_f64(vaddq_f64(vmulq_f64(vdupq_n_f64(kLog2E), xc), vdupq_n_f64(0.5)));
    float64x2_t r = vsubq_f64(xc, vmulq_f64(pn, vdupq_n_f64(kC1)));
    r = vsubq_f64(r, vmulq_f64(pn, vdupq_n_f64(kC2)));

    const float64x2_t rr = vmulq_f64(r, r);
    float64x2_t px = vaddq_f64(vmulq_f64(vdupq_n_f64(kP0), rr), vdupq_n_f64(kP1));
    px = vaddq_f64(vmulq_f64(px, rr), vdupq_n_f64(kP2));
    px = vmulq_f64(r, px);
    float64x2_t qx = vaddq_f64(vmulq_f64(vdupq_n_f64(kQ0), rr), vdupq_n_f64(kQ1));
    qx = vaddq_f64(vmulq_f64(qx, rr), vdupq_n_f64(kQ2));
    qx = vaddq_f64(vmulq_f64(qx, rr), vdupq_n_f64(kQ3));
    float64x2_t e = vdivq_f64(px, vsubq_f64(qx, px));
    e = vaddq_f64(vdupq_n_f64(1.0), vmulq_f64(vdupq_n_f64(2.0), e));

    const int64x2_t n64 = vcvtq_s64_f64(pn);
    const int64x2_t bits = vshlq_n_s64(vaddq_s64(n64, vdupq_n_s64(1023)), 52);
    float64x2_t out = vmulq_f64(e, vreinterpretq_f64_s64(bits));

    out = vbslq_f64(vcltq_f64(x, lo), vdupq_n_f64(0.0), out);
    out = vbslq_f64(vcgtq_f64(x, hi), vdupq_n_f64(std::numeric_limits<double>::infinity()), out);
    return out;
}

void axpy_neon(double* y, const double* x, double a, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(vld1q_f64(x + i), va)));
    }
    if (i < n) scalar_table().axpy(y + i, x + i, a, n - i);
}

void wrap_bounds_neon(double* p, double lo, double hi, double off, std::size_t n) {
    const float64x2_t vlo = vdupq_n_f64(lo);
    const float64x2_t vhi = vdupq_n_f64(hi);
    const float64x2_t below = vdupq_n_f64(hi - off);
    const float64x2_t above = vdupq_n_f64(lo + off);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(p + i);
        v = vbslq_f64(vcltq_f64(v, vlo), below, v);
        v = vbslq_f64(vcgtq_f64(v, vhi), above, v);
        vst1q_f64(p + i, v);
    }
    if (i < n) scalar_table().wrap_bounds(p + i, lo, hi, off, n - i);
}

void rotate_translate_neon(double* x, double* y, double* z, std::size_t n,
                           const double r[9], const double t[3]) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t xi = vld1q_f64(x + i);
        const float64x2_t yi = vld1q_f64(y + i);
        const float64x2_t zi = vld1q_f64(z + i);
        const float64x2_t nx = vaddq_f64(
            vaddq_f64(vaddq_f64(vmulq_f64(vdupq_n_f64(r[0]), xi), vmulq_f64(vdupq_n_f64(r[1]), yi)),
                      vmulq_f64(vdupq_n_f64(r[2]), zi)),
            vdupq_n_f64(t[0]));
        const float64x2_t ny = vaddq_f64(
            vaddq_f64(vaddq_f64(vmulq_f64(vdupq_n_f64(r[3]), xi), vmulq_f64(vdupq_n_f64(r[4]), yi)),
                      vmulq_f64(vdupq_n_f64(r[5]), zi)),
            vdupq_n_f64(t[1]));
        const float64x2_t nz = vaddq_f64(
            vaddq_f64(vaddq_f64(vmulq_f64(vdupq_n_f64(r[6]), xi), vmulq_f64(vdupq_n_f64(r[7]), yi)),
                      vmulq_f64(vdupq_n_f64(r[8]), zi)),
            vdupq_n_f64(t[2]));
        vst1q_f64(x + i, nx);
        vst1q_f64(y + i, ny);
        vst1q_f64(z + i, nz);
    }
    if (i < n) scalar_table().rotate_translate(x + i, y + i, z + i, n - i, r, t);
}

void splat_row_neon(double* r, double* g, double* b, double* trans, std::size_t n,
                    double dx0, double dy, const double conic[3], double opacity,
                    const double rgb[3]) {
    const double tb = (2.0 * conic[1]) * dy;
    const double tc = conic[2] * (dy * dy);
    const float64x2_t va = vdupq_n_f64(conic[0]);
    const float64x2_t vtb = vdupq_n_f64(tb);
    const float64x2_t vtc = vdupq_n_f64(tc);
    const float64x2_t vdx0 = vdupq_n_f64(dx0);
    const float64x2_t vop = vdupq_n_f64(opacity);
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t cutoff = vdupq_n_f64(18.0);
    const float64x2_t neg_half = vdupq_n_f64(-0.5);
    const float64x2_t lane = vcombine_f64(vdup_n_f64(0.0), vdup_n_f64(1.0));

    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t idx = vaddq_f64(vdupq_n_f64(static_cast<double>(i)), lane);
        const float64x2_t dx = vaddq_f64(vdx0, idx);
        const float64x2_t q =
            vaddq_f64(vaddq_f64(vmulq_f64(vmulq_f64(va, dx), dx), vmulq_f64(vtb, dx)), vtc);
        const uint64x2_t active = vcleq_f64(q, cutoff);
        if ((vgetq_lane_u64(active, 0) | vgetq_lane_u64(active, 1)) == 0) continue;
        float64x2_t alpha = vmulq_f64(vop, exp_pinned_f64(vmulq_f64(neg_half, q)));
        alpha = vminq_f64(alpha, one);
        alpha = vreinterpretq_f64_u64(vandq_u64(vreinterpretq_u64_f64(alpha), active));
        const float64x2_t w = vmulq_f64(alpha, vld1q_f64(trans + i));
        vst1q_f64(r + i, vaddq_f64(vld1q_f64(r + i), vmulq_f64(vdupq_n_f64(rgb[0]), w)));
        vst1q_f64(g + i, vaddq_f64(vld1q_f64(g + i), vmulq_f64(vdupq_n_f64(rgb[1]), w)));
        vst1q_f64(b + i, vaddq_f64(vld1q_f64(b + i), vmulq_f64(vdupq_n_f64(rgb[2]), w)));
        vst1q_f64(trans + i, vmulq_f64(vld1q_f64(trans + i), vsubq_f64(one, alpha)));
    }
    if (i < n)
        scalar_table().splat_row(r + i, g + i, b + i, trans + i, n - i,
                                 dx0 + static_cast<double>(i), dy, conic, opacity, rgb);
}

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    }
    double sum = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

}  // namespace

const Table* neon_table() {
    static const Table t{axpy_neon, wrap_bounds_neon, rotate_translate_neon, splat_row_neon,
                         dot_neon, "neon"};
    return &t;
}

}  // namespace stormfield::kernels

#else

namespace stormfield::kernels {
const Table* neon_table() { return nullptr; }
}  // namespace stormfield::kernels

#endif
