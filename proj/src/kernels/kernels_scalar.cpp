#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "stormfield/kernels/kernels.hpp"

#include "exp_constants.hpp"

namespace stormfield::kernels {

double exp_pinned(double x) {
    using namespace expdetail;
    double xc = x;
    if (xc < kUnderflow) xc = kUnderflow;
    if (xc > kOverflow) xc = kOverflow;

    const double pn = std::floor(kLog2E * xc + 0.5);
    double r = xc - pn * kC1;
    r = r - pn * kC2;

    const double rr = r * r;
    const double px = r * ((kP0 * rr + kP1) * rr + kP2);
    const double qx = ((kQ0 * rr + kQ1) * rr + kQ2) * rr + kQ3;
    double e = px / (qx - px);
    e = 1.0 + 2.0 * e;

    const auto n = static_cast<std::int64_t>(pn);
    const double pow2n = std::bit_cast<double>(static_cast<std::uint64_t>(n + 1023) << 52);
    double out = e * pow2n;

    if (x < kUnderflow) out = 0.0;
    if (x > kOverflow) out = std::numeric_limits<double>::infinity();
    return out;
}

namespace {

void axpy_scalar(double* y, const double* x, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + x[i] * a;
}

void wrap_bounds_scalar(double* p, double lo, double hi, double off, std::size_t n) {
    const double below = hi - off;
    const double above = lo + off;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = p[i];
        if (v < lo)
            p[i] = below;
        else if (v > hi)
            p[i] = above;
    }
}

void rotate_translate_scalar(double* x, double* y, double* z, std::size_t n,
                             const double r[9], const double t[3]) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i], yi = y[i], zi = z[i];
        x[i] = ((r[0] * xi + r[1] * yi) + r[2] * zi) + t[0];
        y[i] = ((r[3] * xi + r[4] * yi) + r[5] * zi) + t[1];
        z[i] = ((r[6] * xi + r[7] * yi) + r[8] * zi) + t[2];
    }
}

void splat_row_scalar(double* r, double* g, double* b, double* trans, std::size_t n,
                      double dx0, double dy, const double conic[3], double opacity,
                      const double rgb[3]) {
    const double tb = (2.0 * conic[1]) * dy;
    const double tc = conic[2] * (dy * dy);
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = dx0 + static_cast<double>(i);
        const double q = ((conic[0] * dx) * dx + tb * dx) + tc;
        if (q > 18.0) continue;
        double alpha = opacity * exp_pinned(-0.5 * q);
        if (alpha > 1.0) alpha = 1.0;
        const double w = alpha * trans[i];
        r[i] = r[i] + rgb[0] * w;
        g[i] = g[i] + rgb[1] * w;
        b[i] = b[i] + rgb[2] * w;
        trans[i] = trans[i] * (1.0 - alpha);
    }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace

const Table& scalar_table() {
    static const Table t{axpy_scalar, wrap_bounds_scalar, rotate_translate_scalar,
                         splat_row_scalar, dot_scalar, "scalar"};
    return t;
}

}  // namespace stormfield::kernels
