#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "stormfield/geometry.hpp"

namespace stormfield::field {

// Seeded sampling source. mt19937_64 has a standard-pinned output sequence
// and the value transforms below are spelled out here, so equal seeds give
// bit-identical samples within one build; cross-toolchain bit compatibility
// is not promised.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

    // [0, 1), 53-bit resolution
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    // standard normal via Box-Muller (cosine branch only, two draws per value)
    double gaussian() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * M_PI * u2);
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

    Vec3 unit_vector() {
        for (;;) {
            const Vec3 v{gaussian(), gaussian(), gaussian()};
            const double n = v.norm();
            if (n > 1e-12) return v * (1.0 / n);
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace stormfield::field
