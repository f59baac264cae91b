#pragma once

#include <array>
#include <cmath>
#include <string>

#include "stormfield/error.hpp"

namespace stormfield {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }

    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

// Row-major 3x3 matrix.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return Mat3{}; }

    double& operator()(int r, int c) { return m[static_cast<std::size_t>(r * 3 + c)]; }
    double operator()(int r, int c) const { return m[static_cast<std::size_t>(r * 3 + c)]; }

    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) + (*this)(i, 2) * o(2, j);
        return r;
    }

    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }
};

// Unit quaternion, scalar-first.
struct Quat {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    Quat() = default;
    Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

    Quat normalized() const {
        const double n = norm();
        return {w / n, x / n, y / n, z / n};
    }

    // Hamilton product; (a * b) rotates by b first, then a.
    Quat operator*(const Quat& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    static Quat from_axis_angle(const Vec3& axis, double angle) {
        const double h = 0.5 * angle;
        const double s = std::sin(h);
        return {std::cos(h), axis.x * s, axis.y * s, axis.z * s};
    }

    Mat3 to_matrix() const {
        Mat3 r;
        const double xx = x * x, yy = y * y, zz = z * z;
        const double xy = x * y, xz = x * z, yz = y * z;
        const double wx = w * x, wy = w * y, wz = w * z;
        r(0, 0) = 1 - 2 * (yy + zz);
        r(0, 1) = 2 * (xy - wz);
        r(0, 2) = 2 * (xz + wy);
        r(1, 0) = 2 * (xy + wz);
        r(1, 1) = 1 - 2 * (xx + zz);
        r(1, 2) = 2 * (yz - wx);
        r(2, 0) = 2 * (xz - wy);
        r(2, 1) = 2 * (yz + wx);
        r(2, 2) = 1 - 2 * (xx + yy);
        return r;
    }

    // Shepperd's method, branch on the largest diagonal term.
    static Quat from_matrix(const Mat3& r) {
        Quat q;
        const double tr = r(0, 0) + r(1, 1) + r(2, 2);
        if (tr > 0.0) {
            double s = std::sqrt(tr + 1.0) * 2.0;
            q.w = 0.25 * s;
            q.x = (r(2, 1) - r(1, 2)) / s;
            q.y = (r(0, 2) - r(2, 0)) / s;
            q.z = (r(1, 0) - r(0, 1)) / s;
        } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
            double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
            q.w = (r(2, 1) - r(1, 2)) / s;
            q.x = 0.25 * s;
            q.y = (r(0, 1) + r(1, 0)) / s;
            q.z = (r(0, 2) + r(2, 0)) / s;
        } else if (r(1, 1) > r(2, 2)) {
            double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2.0;
            q.w = (r(0, 2) - r(2, 0)) / s;
            q.x = (r(0, 1) + r(1, 0)) / s;
            q.y = 0.25 * s;
            q.z = (r(1, 2) + r(2, 1)) / s;
        } else {
            double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2.0;
            q.w = (r(1, 0) - r(0, 1)) / s;
            q.x = (r(0, 2) + r(2, 0)) / s;
            q.y = (r(1, 2) + r(2, 1)) / s;
            q.z = 0.25 * s;
        }
        return q.normalized();
    }
};

// Max deviation of R^T R from identity.
inline double orthonormality_error(const Mat3& r) {
    const Mat3 g = r.transposed() * r;
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(g(i, j) - target));
        }
    return worst;
}

// Appends which rows break unit norm / pairwise orthogonality; empty if clean.
std::string rotation_diagnostics(const Mat3& r, double tol);

// Proper rigid motion: p' = rotation * p + translation.
struct RigidTransform {
    Mat3 rotation;
    Vec3 translation;

    static constexpr double kOrthoTol = 1e-9;

    static RigidTransform identity() { return {}; }

    // Throws ValidationError when R is not orthonormal with det +1 (1e-9).
    static RigidTransform validated(const Mat3& r, const Vec3& t);

    Vec3 apply(const Vec3& p) const { return rotation * p + translation; }

    RigidTransform inverse() const {
        const Mat3 rt = rotation.transposed();
        return {rt, -(rt * translation)};
    }

    // this ∘ other: apply `other` first.
    RigidTransform compose(const RigidTransform& other) const {
        return {rotation * other.rotation, rotation * other.translation + translation};
    }
};

}  // namespace stormfield
