#include "stormfield/splat/project.hpp"

#include <cmath>

namespace stormfield::splat {

PixelRect footprint_rect(const Splat2D& s, int width, int height) {
    const double rx = std::sqrt(18.0 * s.cov_xx);
    const double ry = std::sqrt(18.0 * s.cov_yy);
    PixelRect rect;
    const double x0 = std::ceil(s.center_x - rx);
    const double x1 = std::floor(s.center_x + rx);
    const double y0 = std::ceil(s.center_y - ry);
    const double y1 = std::floor(s.center_y + ry);
    if (x1 < 0.0 || y1 < 0.0 || x0 > width - 1.0 || y0 > height - 1.0) return rect;  // empty
    rect.x0 = static_cast<int>(std::max(0.0, x0));
    rect.x1 = static_cast<int>(std::min(static_cast<double>(width - 1), x1));
    rect.y0 = static_cast<int>(std::max(0.0, y0));
    rect.y1 = static_cast<int>(std::min(static_cast<double>(height - 1), y1));
    return rect;
}

std::optional<Splat2D> project(const field::ParticleSet& set, std::size_t index,
                               const CameraFrame& camera) {
    const Vec3 pc = camera.world_to_camera(set.position(index));
    if (!(pc.z > kNearPlane)) return std::nullopt;

    const double inv_z = 1.0 / pc.z;
    Splat2D s;
    s.center_x = camera.fx * pc.x * inv_z + camera.cx;
    s.center_y = camera.fy * pc.y * inv_z + camera.cy;
    s.depth = pc.z;
    s.r = set.cr[index];
    s.g = set.cg[index];
    s.b = set.cb[index];
    s.opacity = set.opacity[index];

    // world covariance R S^2 R^T, expressed in camera axes
    const Mat3 rp = set.rotation(index).to_matrix();
    const Vec3 sc = set.scale(index);
    Mat3 m = rp;
    for (int row = 0; row < 3; ++row) {
        m(row, 0) *= sc.x;
        m(row, 1) *= sc.y;
        m(row, 2) *= sc.z;
    }
    const Mat3 cov_world = m * m.transposed();
    const Mat3 w = camera.rotation.transposed();
    const Mat3 cov_cam = w * cov_world * w.transposed();

    // J of (fx x/z + cx, fy y/z + cy) wrt camera-space position
    const double j00 = camera.fx * inv_z;
    const double j02 = -camera.fx * pc.x * inv_z * inv_z;
    const double j11 = camera.fy * inv_z;
    const double j12 = -camera.fy * pc.y * inv_z * inv_z;

    const double a00 = j00 * cov_cam(0, 0) + j02 * cov_cam(2, 0);
    const double a01 = j00 * cov_cam(0, 1) + j02 * cov_cam(2, 1);
    const double a02 = j00 * cov_cam(0, 2) + j02 * cov_cam(2, 2);
    const double a10 = j11 * cov_cam(1, 0) + j12 * cov_cam(2, 0);
    const double a11 = j11 * cov_cam(1, 1) + j12 * cov_cam(2, 1);
    const double a12 = j11 * cov_cam(1, 2) + j12 * cov_cam(2, 2);

    s.cov_xx = a00 * j00 + a02 * j02;
    s.cov_xy = a10 * j00 + a12 * j02;
    s.cov_yy = a11 * j11 + a12 * j12;

    if (!std::isfinite(s.cov_xx) || !std::isfinite(s.cov_xy) || !std::isfinite(s.cov_yy))
        return std::nullopt;
    const double det = s.cov_xx * s.cov_yy - s.cov_xy * s.cov_xy;
    if (!(det > 0.0) || !(s.cov_xx > 0.0)) return std::nullopt;  // degenerate footprint

    if (footprint_rect(s, camera.width, camera.height).empty()) return std::nullopt;
    return s;
}

}  // namespace stormfield::splat
