#pragma once

#include <optional>

#include "stormfield/field/types.hpp"
#include "stormfield/splat/camera.hpp"

namespace stormfield::splat {

inline constexpr double kNearPlane = 0.05;  // meters

// Screen-space Gaussian footprint. cov is symmetric positive-definite.
struct Splat2D {
    double center_x = 0.0, center_y = 0.0;  // px
    double cov_xx = 1.0, cov_xy = 0.0, cov_yy = 1.0;  // px^2
    double depth = 1.0;  // camera-space z, m
    double r = 0.0, g = 0.0, b = 0.0;
    double opacity = 0.0;
};

// Pixel bounding box of the truncated footprint (quadratic form <= 18),
// clamped to the image; empty when x0 > x1 or y0 > y1.
struct PixelRect {
    int x0 = 0, x1 = -1, y0 = 0, y1 = -1;
    bool empty() const { return x0 > x1 || y0 > y1; }
};
PixelRect footprint_rect(const Splat2D& s, int width, int height);

// Pinhole projection with first-order covariance propagation of the world
// covariance R S^2 R^T. Returns nullopt (culled) when the particle sits at or
// behind the near plane, its footprint misses the image, or the projected
// covariance degenerates.
std::optional<Splat2D> project(const field::ParticleSet& set, std::size_t index,
                               const CameraFrame& camera);

}  // namespace stormfield::splat
