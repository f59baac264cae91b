#pragma once

// Rational approximation of exp (Cephes form):
//   n  = floor(log2(e) * x + 0.5)
//   r  = x - n*C1 - n*C2            (C1 + C2 = ln 2, split for precision)
//   px = r * P(r^2),  qx = Q(r^2)
//   exp(x) = (1 + 2 * px / (qx - px)) * 2^n
// The SIMD variants replicate this op-for-op; keep coefficients shared.

namespace stormfield::kernels::expdetail {

inline constexpr double kLog2E = 1.4426950408889634073599;
inline constexpr double kC1 = 6.93145751953125e-1;
inline constexpr double kC2 = 1.42860682030941723212e-6;

inline constexpr double kP0 = 1.26177193074810590878e-4;
inline constexpr double kP1 = 3.02994407707441961300e-2;
inline constexpr double kP2 = 9.99999999999999999910e-1;

inline constexpr double kQ0 = 3.00198505138664455042e-6;
inline constexpr double kQ1 = 2.52448340349684104192e-3;
inline constexpr double kQ2 = 2.27265548208155028766e-1;
inline constexpr double kQ3 = 2.00000000000000000005e0;

// Clamp keeps 2^n constructible from exponent bits (no denormals).
inline constexpr double kUnderflow = -700.0;
inline constexpr double kOverflow = 709.0;

}  // namespace stormfield::kernels::expdetail
