#pragma once

#include "stormfield/geometry.hpp"

namespace stormfield::splat {

// One timestep/view of a pinhole camera. Pose is camera-to-world; camera
// space is +x right, +y down, +z forward.
struct CameraFrame {
    Mat3 rotation;     // camera-to-world
    Vec3 translation;  // camera center in world, m
    double fx = 1.0, fy = 1.0;  // focal lengths, px
    double cx = 0.0, cy = 0.0;  // principal point, px
    int width = 1, height = 1;
    int frame_index = 0;
    int view_id = 0;

    // Throws ValidationError with axis-specific diagnostics on a bad pose
    // (orthonormality / det within 1e-9) or out-of-range intrinsics.
    void validate() const;

    Vec3 world_to_camera(const Vec3& p) const {
        return rotation.transposed() * (p - translation);
    }

    RigidTransform pose() const { return {rotation, translation}; }
};

}  // namespace stormfield::splat
