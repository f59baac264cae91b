// AVX2 variants. Compiled with -mavx2 on x86-64 only; every arithmetic step
// mirrors the scalar reference op-for-op so results are bit-identical.

#include "stormfield/kernels/kernels.hpp"

#if defined(__AVX2__) && (defined(__x86_64__) || defined(__i386__))

#include <immintrin.h>

#include <cstdint>
#include <limits>

#include "exp_constants.hpp"

namespace stormfield::kernels {
namespace {

using namespace expdetail;

inline __m256d exp_pinned_pd(__m256d x) {
    const __m256d lo = _mm256_set1_pd(kUnderflow);
    const __m256d hi = _mm256_set1_pd(kOverflow);
    const __m256d xc = _mm256_max_pd(_mm256_min_pd(x, hi), lo);

    const __m256d pn = _mm256_floor_pd(
        _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(kLog2E), xc), _mm256_set1_pd(0.5)));
    __m256d r = _mm256_sub_pd(xc, _mm256_mul_pd(pn, _mm256_set1_pd(kC1)));
    r = _mm256_sub_pd(r, _mm256_mul_pd(pn, _mm256_set1_pd(kC2)));

    const __m256d rr = _mm256_mul_pd(r, r);
    __m256d px = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(kP0), rr), _mm256_set1_pd(kP1));
    px = _mm256_add_pd(_mm256_mul_pd(px, rr), _mm256_set1_pd(kP2));
    px = _mm256_mul_pd(r, px);
    __m256d qx = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(kQ0), rr), _mm256_set1_pd(kQ1));
    qx = _mm256_add_pd(_mm256_mul_pd(qx, rr), _mm256_set1_pd(kQ2));
    qx = _mm256_add_pd(_mm256_mul_pd(qx, rr), _mm256_set1_pd(kQ3));
    __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
    e = _mm256_add_pd(_mm256_set1_pd(1.0), _mm256_mul_pd(_mm256_set1_pd(2.0), e));

    // 2^n from exponent bits; pn is integral and within int32 range after clamping.
    const __m128i n32 = _mm256_cvtpd_epi32(pn);
    const __m256i n64 = _mm256_cvtepi32_epi64(n32);
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    __m256d out = _mm256_mul_pd(e, _mm256_castsi256_pd(bits));

    out = _mm256_andnot_pd(_mm256_cmp_pd(x, lo, _CMP_LT_OQ), out);
    const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    out = _mm256_blendv_pd(out, inf, _mm256_cmp_pd(x, hi, _CMP_GT_OQ));
    return out;
}

void axpy_avx2(double* y, const double* x, double a, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vy = _mm256_loadu_pd(y + i);
        const __m256d vx = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(vx, va)));
    }
    if (i < n) scalar_table().axpy(y + i, x + i, a, n - i);
}

void wrap_bounds_avx2(double* p, double lo, double hi, double off, std::size_t n) {
    const __m256d vlo = _mm256_set1_pd(lo);
    const __m256d vhi = _mm256_set1_pd(hi);
    const __m256d below = _mm256_set1_pd(hi - off);
    const __m256d above = _mm256_set1_pd(lo + off);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(p + i);
        const __m256d mlo = _mm256_cmp_pd(v, vlo, _CMP_LT_OQ);
        const __m256d mhi = _mm256_cmp_pd(v, vhi, _CMP_GT_OQ);
        v = _mm256_blendv_pd(v, below, mlo);
        v = _mm256_blendv_pd(v, above, mhi);
        _mm256_storeu_pd(p + i, v);
    }
    if (i < n) scalar_table().wrap_bounds(p + i, lo, hi, off, n - i);
}

void rotate_translate_avx2(double* x, double* y, double* z, std::size_t n,
                           const double r[9], const double t[3]) {
    const __m256d r0 = _mm256_set1_pd(r[0]), r1 = _mm256_set1_pd(r[1]), r2 = _mm256_set1_pd(r[2]);
    const __m256d r3 = _mm256_set1_pd(r[3]), r4 = _mm256_set1_pd(r[4]), r5 = _mm256_set1_pd(r[5]);
    const __m256d r6 = _mm256_set1_pd(r[6]), r7 = _mm256_set1_pd(r[7]), r8 = _mm256_set1_pd(r[8]);
    const __m256d t0 = _mm256_set1_pd(t[0]), t1 = _mm256_set1_pd(t[1]), t2 = _mm256_set1_pd(t[2]);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xi = _mm256_loadu_pd(x + i);
        const __m256d yi = _mm256_loadu_pd(y + i);
        const __m256d zi = _mm256_loadu_pd(z + i);
        const __m256d nx = _mm256_add_pd(
            _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(r0, xi), _mm256_mul_pd(r1, yi)),
                          _mm256_mul_pd(r2, zi)),
            t0);
        const __m256d ny = _mm256_add_pd(
            _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(r3, xi), _mm256_mul_pd(r4, yi)),
                          _mm256_mul_pd(r5, zi)),
            t1);
        const __m256d nz = _mm256_add_pd(
            _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(r6, xi), _mm256_mul_pd(r7, yi)),
                          _mm256_mul_pd(r8, zi)),
            t2);
        _mm256_storeu_pd(x + i, nx);
        _mm256_storeu_pd(y + i, ny);
        _mm256_storeu_pd(z + i, nz);
    }
    if (i < n) scalar_table().rotate_translate(x + i, y + i, z + i, n - i, r, t);
}

void splat_row_avx2(double* r, double* g, double* b, double* trans, std::size_t n,
                    double dx0, double dy, const double conic[3], double opacity,
                    const double rgb[3]) {
    const double tb = (2.0 * conic[1]) * dy;
    const double tc = conic[2] * (dy * dy);
    const __m256d va = _mm256_set1_pd(conic[0]);
    const __m256d vtb = _mm256_set1_pd(tb);
    const __m256d vtc = _mm256_set1_pd(tc);
    const __m256d vdx0 = _mm256_set1_pd(dx0);
    const __m256d vop = _mm256_set1_pd(opacity);
    const __m256d vr = _mm256_set1_pd(rgb[0]);
    const __m256d vg = _mm256_set1_pd(rgb[1]);
    const __m256d vb = _mm256_set1_pd(rgb[2]);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d cutoff = _mm256_set1_pd(18.0);
    const __m256d neg_half = _mm256_set1_pd(-0.5);
    const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d idx = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(i)), lane);
        const __m256d dx = _mm256_add_pd(vdx0, idx);
        const __m256d q = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(_mm256_mul_pd(va, dx), dx), _mm256_mul_pd(vtb, dx)),
            vtc);
        const __m256d active = _mm256_cmp_pd(q, cutoff, _CMP_LE_OQ);
        if (_mm256_testz_pd(active, active)) continue;
        __m256d alpha = _mm256_mul_pd(vop, exp_pinned_pd(_mm256_mul_pd(neg_half, q)));
        alpha = _mm256_min_pd(alpha, one);
        alpha = _mm256_and_pd(alpha, active);  // inactive lanes contribute +0
        const __m256d w = _mm256_mul_pd(alpha, _mm256_loadu_pd(trans + i));
        _mm256_storeu_pd(r + i, _mm256_add_pd(_mm256_loadu_pd(r + i), _mm256_mul_pd(vr, w)));
        _mm256_storeu_pd(g + i, _mm256_add_pd(_mm256_loadu_pd(g + i), _mm256_mul_pd(vg, w)));
        _mm256_storeu_pd(b + i, _mm256_add_pd(_mm256_loadu_pd(b + i), _mm256_mul_pd(vb, w)));
        _mm256_storeu_pd(trans + i,
                         _mm256_mul_pd(_mm256_loadu_pd(trans + i), _mm256_sub_pd(one, alpha)));
    }
    if (i < n)
        scalar_table().splat_row(r + i, g + i, b + i, trans + i, n - i,
                                 dx0 + static_cast<double>(i), dy, conic, opacity, rgb);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_add_pd(lo, hi);
    double sum = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

}  // namespace

const Table* avx2_table() {
    static const Table t{axpy_avx2, wrap_bounds_avx2, rotate_translate_avx2, splat_row_avx2,
                         dot_avx2, "avx2"};
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    return &t;
}

}  // namespace stormfield::kernels

#else

namespace stormfield::kernels {
const Table* avx2_table() { return nullptr; }
}  // namespace stormfield::kernels

#endif
