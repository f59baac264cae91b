#include "stormfield/field/sample.hpp"

#include <algorithm>

#include "stormfield/field/rng.hpp"

namespace stormfield::field {

namespace {

constexpr double kMinScale = 1e-4;  // meters; keeps covariances positive-definite

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

ParticleSet sample_field(const WeatherFieldConfig& config, std::uint64_t seed) {
    config.validate();

    SampleRng rng(seed);
    ParticleSet set;
    set.resize(config.quantity);

    const auto& d = config.dists;
    for (std::size_t i = 0; i < config.quantity; ++i) {
        set.px[i] = rng.uniform(config.bounds.min.x, config.bounds.max.x);
        set.py[i] = rng.uniform(config.bounds.min.y, config.bounds.max.y);
        set.pz[i] = rng.uniform(config.bounds.min.z, config.bounds.max.z);

        set.cr[i] = clamp01(rng.gaussian(d.color[0].mean, d.color[0].stddev));
        set.cg[i] = clamp01(rng.gaussian(d.color[1].mean, d.color[1].stddev));
        set.cb[i] = clamp01(rng.gaussian(d.color[2].mean, d.color[2].stddev));

        set.sx[i] = std::max(kMinScale, rng.gaussian(d.scale[0].mean, d.scale[0].stddev));
        set.sy[i] = std::max(kMinScale, rng.gaussian(d.scale[1].mean, d.scale[1].stddev));
        set.sz[i] = std::max(kMinScale, rng.gaussian(d.scale[2].mean, d.scale[2].stddev));

        const Vec3 axis = rng.unit_vector();
        const double angle = rng.gaussian(d.rotation.mean, d.rotation.stddev);
        const Quat q = Quat::from_axis_angle(axis, angle).normalized();
        set.qw[i] = q.w;
        set.qx[i] = q.x;
        set.qy[i] = q.y;
        set.qz[i] = q.z;

        set.opacity[i] = clamp01(rng.gaussian(d.opacity.mean, d.opacity.stddev));

        // jitter draws always happen so the sample stream layout is fixed
        const Vec3 j{rng.gaussian(), rng.gaussian(), rng.gaussian()};
        set.vx[i] = config.velocity.direction.x + config.jitter * j.x;
        set.vy[i] = config.velocity.direction.y + config.jitter * j.y;
        set.vz[i] = config.velocity.direction.z + config.jitter * j.z;
    }
    return set;
}

}  // namespace stormfield::field
