#pragma once

#include <cstddef>

namespace stormfield::kernels {

// Hot inner loops, provided as a scalar reference plus SIMD variants that are
// selected once at startup. Map-style kernels (axpy, wrap_bounds,
// rotate_translate, splat_row) are bit-identical across variants; dot is a
// reduction and agrees to ~1e-15 relative.
struct Table {
    // y[i] += x[i] * a
    void (*axpy)(double* y, const double* x, double a, std::size_t n);

    // Per-coordinate bounds recycling:
    //   p < lo  ->  hi - off
    //   p > hi  ->  lo + off
    //   otherwise unchanged
    void (*wrap_bounds)(double* p, double lo, double hi, double off, std::size_t n);

    // In-place (x,y,z)[i] = R * (x,y,z)[i] + t, R row-major.
    void (*rotate_translate)(double* x, double* y, double* z, std::size_t n,
                             const double r[9], const double t[3]);

    // Front-to-back compositing of one Gaussian splat across a pixel row.
    // For pixel i at offset dx = dx0 + i from the splat center (dy fixed):
    //   q     = conic[0]*dx^2 + 2*conic[1]*dx*dy + conic[2]*dy^2
    //   alpha = q > 18 ? 0 : min(1, opacity * exp(-q/2))
    //   rgbacc[i] += color * alpha * trans[i];  trans[i] *= 1 - alpha
    void (*splat_row)(double* r, double* g, double* b, double* trans, std::size_t n,
                      double dx0, double dy, const double conic[3], double opacity,
                      const double rgb[3]);

    double (*dot)(const double* a, const double* b, std::size_t n);

    const char* name;
};

// Scalar reference implementations; always available.
const Table& scalar_table();

// SIMD variants; nullptr when the build target or running CPU lacks them.
const Table* avx2_table();
const Table* neon_table();

// Variant chosen at startup. STORMFIELD_SIMD=scalar|avx2|neon|auto overrides;
// requesting an unavailable variant falls back to scalar.
const Table& active_table();

// Pinned polynomial exp shared by the scalar and SIMD splat kernels so both
// paths round identically. Accurate to a few ulp of std::exp on [-700, 709];
// returns 0 below, +inf above.
double exp_pinned(double x);

}  // namespace stormfield::kernels
