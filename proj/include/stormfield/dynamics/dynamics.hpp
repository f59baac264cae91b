#pragma once

#include <cstdint>
#include <vector>

#include "stormfield/field/types.hpp"
#include "stormfield/geometry.hpp"
#include "stormfield/splat/camera.hpp"

namespace stormfield::dyn {

struct SimStep {
    double dt;  // seconds, > 0

    static SimStep of(double dt);  // throws ValidationError on dt <= 0 / non-finite
};

// positions += velocities * dt; everything else untouched.
field::ParticleSet step(field::ParticleSet set, SimStep s);

// Per-axis bounds recycling: a coordinate below min resets to max - offset,
// above max to min + offset. Count and non-position attributes conserved.
// Requires 0 <= offset < extent on every axis.
field::ParticleSet recycle(field::ParticleSet set, const field::FieldBounds& bounds,
                           double offset);

// Relative camera motion between two camera-to-world poses: T_now * T_ref^-1.
RigidTransform relative_transform(const splat::CameraFrame& ref, const splat::CameraFrame& now);

// Rigid re-pose of the whole field: positions mapped through the transform,
// particle rotations composed with its rotation; velocities untouched.
field::ParticleSet align_field(field::ParticleSet set, const RigidTransform& xform);

struct SimToggles {
    bool alignment = true;
    bool dynamics = true;
    bool attributes = true;
};

// Per trajectory frame: align with the camera's relative motion, integrate
// velocities, recycle against the camera-riding bounds. Emits one set per
// frame (frame 0 is the freshly placed field). Deterministic in its inputs.
std::vector<field::ParticleSet> simulate(const field::WeatherFieldConfig& config,
                                         const std::vector<splat::CameraFrame>& trajectory,
                                         SimStep dt, std::uint64_t seed,
                                         const SimToggles& toggles = {});

}  // namespace stormfield::dyn
