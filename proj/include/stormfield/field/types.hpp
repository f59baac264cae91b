#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stormfield/error.hpp"
#include "stormfield/geometry.hpp"

namespace stormfield::field {

enum class WeatherType { Snow, Rain, Fog };

const char* weather_name(WeatherType type);
WeatherType parse_weather(const std::string& name);  // rejects unknown tags

struct GaussianDist {
    double mean = 0.0;
    double stddev = 0.0;  // >= 0
};

// Per-particle attribute distributions. Color/opacity are clamped to [0,1]
// after sampling, scales to a small positive floor; rotation is an axis-angle
// magnitude in radians around a uniformly random axis.
struct AttributeDistributions {
    std::array<GaussianDist, 3> color;
    std::array<GaussianDist, 3> scale;
    GaussianDist rotation;
    GaussianDist opacity;
};

struct FieldBounds {
    Vec3 min;
    Vec3 max;  // min < max on every axis

    double extent(int axis) const {
        switch (axis) {
            case 0: return max.x - min.x;
            case 1: return max.y - min.y;
            default: return max.z - min.z;
        }
    }
};

// Constant directional velocity shared by the field, m/s.
struct VelocityModel {
    Vec3 direction;
};

struct SeverityLevel {
    enum class Name { Light, Moderate, Heavy };

    std::optional<Name> name = Name::Moderate;
    double multiplier = 1.0;  // used when name is empty; > 0

    static SeverityLevel light() { return {Name::Light, 1.0}; }
    static SeverityLevel moderate() { return {Name::Moderate, 1.0}; }
    static SeverityLevel heavy() { return {Name::Heavy, 1.0}; }
    static SeverityLevel custom(double m);
    static SeverityLevel parse(const std::string& text);  // light|moderate|heavy|<float>
};

struct WeatherFieldConfig {
    WeatherType weather = WeatherType::Snow;
    AttributeDistributions dists;
    std::uint64_t quantity = 1;  // >= 1
    FieldBounds bounds;
    VelocityModel velocity;
    double recycle_offset = 0.0;  // meters; < extent on every axis
    double jitter = 0.0;          // per-particle velocity stddev, m/s

    void validate() const;  // throws ValidationError
};

// Structure-of-arrays particle state. All arrays share one length.
struct ParticleSet {
    std::vector<double> px, py, pz;      // position, m
    std::vector<double> qw, qx, qy, qz;  // unit rotation quaternion
    std::vector<double> sx, sy, sz;      // scale, m (> 0)
    std::vector<double> cr, cg, cb;      // color, [0,1]
    std::vector<double> opacity;         // [0,1]
    std::vector<double> vx, vy, vz;      // velocity, m/s

    std::size_t size() const { return px.size(); }
    void resize(std::size_t n);

    Vec3 position(std::size_t i) const { return {px[i], py[i], pz[i]}; }
    Quat rotation(std::size_t i) const { return {qw[i], qx[i], qy[i], qz[i]}; }
    Vec3 scale(std::size_t i) const { return {sx[i], sy[i], sz[i]}; }
    Vec3 velocity(std::size_t i) const { return {vx[i], vy[i], vz[i]}; }

    // Full invariant check: lengths equal, quaternions unit within 1e-6,
    // scales > 0, colors/opacities in [0,1], everything finite.
    void validate() const;
};

}  // namespace stormfield::field
