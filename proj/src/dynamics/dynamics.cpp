#include "stormfield/dynamics/dynamics.hpp"

#include <cmath>

#include "stormfield/field/presets.hpp"
#include "stormfield/field/sample.hpp"
#include "stormfield/kernels/kernels.hpp"

namespace stormfield::dyn {

namespace {

void compose_rotations(field::ParticleSet& set, const Mat3& rot) {
    const Quat dq = Quat::from_matrix(rot);
    for (std::size_t i = 0; i < set.size(); ++i) {
        const Quat q = (dq * set.rotation(i)).normalized();
        set.qw[i] = q.w;
        set.qx[i] = q.x;
        set.qy[i] = q.y;
        set.qz[i] = q.z;
    }
}

void transform_positions(field::ParticleSet& set, const RigidTransform& x) {
    const double t[3] = {x.translation.x, x.translation.y, x.translation.z};
    kernels::active_table().rotate_translate(set.px.data(), set.py.data(), set.pz.data(),
                                             set.size(), x.rotation.m.data(), t);
}

// Frame change for the initial placement: unlike align_field this also
// rotates velocities, since the config expresses them in field axes.
field::ParticleSet place_in_frame(field::ParticleSet set, const RigidTransform& frame) {
    transform_positions(set, frame);
    compose_rotations(set, frame.rotation);
    const double zero[3] = {0.0, 0.0, 0.0};
    kernels::active_table().rotate_translate(set.vx.data(), set.vy.data(), set.vz.data(),
                                             set.size(), frame.rotation.m.data(), zero);
    return set;
}

field::ParticleSet recycle_in_frame(field::ParticleSet set, const RigidTransform& field_to_world,
                                    const field::FieldBounds& bounds, double offset) {
    const RigidTransform inv = field_to_world.inverse();
    transform_positions(set, inv);
    set = recycle(std::move(set), bounds, offset);
    transform_positions(set, field_to_world);
    return set;
}

}  // namespace

SimStep SimStep::of(double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ValidationError("sim step: dt must be positive and finite");
    return SimStep{dt};
}

field::ParticleSet step(field::ParticleSet set, SimStep s) {
    SimStep::of(s.dt);
    const auto& kern = kernels::active_table();
    kern.axpy(set.px.data(), set.vx.data(), s.dt, set.size());
    kern.axpy(set.py.data(), set.vy.data(), s.dt, set.size());
    kern.axpy(set.pz.data(), set.vz.data(), s.dt, set.size());
    return set;
}

field::ParticleSet recycle(field::ParticleSet set, const field::FieldBounds& bounds,
                           double offset) {
    const char* axes = "xyz";
    for (int a = 0; a < 3; ++a) {
        if (!(offset >= 0.0) || offset >= bounds.extent(a))
            throw ValidationError(std::string("recycle: offset must satisfy 0 <= offset < extent "
                                              "on axis ") +
                                  axes[a]);
    }
    const auto& kern = kernels::active_table();
    kern.wrap_bounds(set.px.data(), bounds.min.x, bounds.max.x, offset, set.size());
    kern.wrap_bounds(set.py.data(), bounds.min.y, bounds.max.y, offset, set.size());
    kern.wrap_bounds(set.pz.data(), bounds.min.z, bounds.max.z, offset, set.size());
    return set;
}

RigidTransform relative_transform(const splat::CameraFrame& ref, const splat::CameraFrame& now) {
    ref.validate();
    now.validate();
    const Mat3 rel_rot = now.rotation * ref.rotation.transposed();
    const Vec3 rel_t = now.translation - rel_rot * ref.translation;
    return {rel_rot, rel_t};
}

field::ParticleSet align_field(field::ParticleSet set, const RigidTransform& xform) {
    const RigidTransform x = RigidTransform::validated(xform.rotation, xform.translation);
    transform_positions(set, x);
    compose_rotations(set, x.rotation);
    return set;
}

std::vector<field::ParticleSet> simulate(const field::WeatherFieldConfig& config,
                                         const std::vector<splat::CameraFrame>& trajectory,
                                         SimStep dt, std::uint64_t seed,
                                         const SimToggles& toggles) {
    if (trajectory.empty()) throw ValidationError("simulate: trajectory is empty");
    SimStep::of(dt.dt);
    for (const auto& cam : trajectory) cam.validate();

    const field::WeatherFieldConfig cfg =
        toggles.attributes ? config : field::randomized_attributes(config);
    cfg.validate();

    field::ParticleSet particles = field::sample_field(cfg, seed);
    RigidTransform field_to_world = trajectory.front().pose();
    particles = place_in_frame(std::move(particles), field_to_world);

    std::vector<field::ParticleSet> frames;
    frames.reserve(trajectory.size());
    frames.push_back(particles);

    for (std::size_t t = 1; t < trajectory.size(); ++t) {
        if (toggles.alignment) {
            const RigidTransform delta = relative_transform(trajectory[t - 1], trajectory[t]);
            particles = align_field(std::move(particles), delta);
            field_to_world = delta.compose(field_to_world);
        }
        if (toggles.dynamics) {
            particles = step(std::move(particles), dt);
            particles = recycle_in_frame(std::move(particles), field_to_world, cfg.bounds,
                                         cfg.recycle_offset);
        }
        frames.push_back(particles);
    }
    return frames;
}

}  // namespace stormfield::dyn
