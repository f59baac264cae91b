#include "stormfield/field/types.hpp"

#include <cmath>

namespace stormfield::field {

const char* weather_name(WeatherType type) {
    switch (type) {
        case WeatherType::Snow: return "snow";
        case WeatherType::Rain: return "rain";
        case WeatherType::Fog: return "fog";
    }
    return "unknown";
}

WeatherType parse_weather(const std::string& name) {
    if (name == "snow") return WeatherType::Snow;
    if (name == "rain") return WeatherType::Rain;
    if (name == "fog") return WeatherType::Fog;
    throw ValidationError("unknown weather type '" + name + "' (expected snow|rain|fog)");
}

SeverityLevel SeverityLevel::custom(double m) {
    if (!(m > 0.0) || !std::isfinite(m))
        throw ValidationError("severity multiplier must be a positive finite number");
    return {std::nullopt, m};
}

SeverityLevel SeverityLevel::parse(const std::string& text) {
    if (text == "light") return light();
    if (text == "moderate") return moderate();
    if (text == "heavy") return heavy();
    try {
        std::size_t used = 0;
        const double m = std::stod(text, &used);
        if (used != text.size()) throw ValidationError("");
        return custom(m);
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("unknown severity '" + text +
                              "' (expected light|moderate|heavy or a positive number)");
    }
}

namespace {

void check_dist(const GaussianDist& d, const char* what) {
    if (!std::isfinite(d.mean) || !std::isfinite(d.stddev))
        throw ValidationError(std::string("config: non-finite ") + what + " distribution");
    if (d.stddev < 0.0)
        throw ValidationError(std::string("config: negative stddev for ") + what);
}

}  // namespace

void WeatherFieldConfig::validate() const {
    for (int c = 0; c < 3; ++c) check_dist(dists.color[static_cast<std::size_t>(c)], "color");
    for (int c = 0; c < 3; ++c) check_dist(dists.scale[static_cast<std::size_t>(c)], "scale");
    check_dist(dists.rotation, "rotation");
    check_dist(dists.opacity, "opacity");

    if (quantity < 1) throw ValidationError("config: quantity must be >= 1");
    if (!bounds.min.finite() || !bounds.max.finite())
        throw ValidationError("config: non-finite bounds");
    const char* axes = "xyz";
    for (int a = 0; a < 3; ++a) {
        if (!(bounds.extent(a) > 0.0))
            throw ValidationError(std::string("config: bounds.min must be < bounds.max on axis ") +
                                  axes[a]);
    }
    if (!velocity.direction.finite()) throw ValidationError("config: non-finite velocity");
    if (!std::isfinite(recycle_offset) || recycle_offset < 0.0)
        throw ValidationError("config: recycle_offset must be >= 0");
    for (int a = 0; a < 3; ++a) {
        if (recycle_offset >= bounds.extent(a))
            throw ValidationError(
                std::string("config: recycle_offset must be smaller than the field extent on axis ") +
                axes[a]);
    }
    if (!std::isfinite(jitter) || jitter < 0.0)
        throw ValidationError("config: jitter must be >= 0");
}

void ParticleSet::resize(std::size_t n) {
    for (auto* v : {&px, &py, &pz, &qw, &qx, &qy, &qz, &sx, &sy, &sz, &cr, &cg, &cb, &opacity,
                    &vx, &vy, &vz})
        v->resize(n);
}

void ParticleSet::validate() const {
    const std::size_t n = px.size();
    for (const auto* v : {&py, &pz, &qw, &qx, &qy, &qz, &sx, &sy, &sz, &cr, &cg, &cb, &opacity,
                          &vx, &vy, &vz})
        if (v->size() != n) throw ValidationError("particle set: array length mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (!position(i).finite() || !velocity(i).finite())
            throw ValidationError("particle set: non-finite state");
        const double qn = rotation(i).norm();
        if (std::abs(qn - 1.0) > 1e-6)
            throw ValidationError("particle set: quaternion not unit-norm");
        if (!(sx[i] > 0.0) || !(sy[i] > 0.0) || !(sz[i] > 0.0))
            throw ValidationError("particle set: non-positive scale");
        for (double v : {cr[i], cg[i], cb[i], opacity[i]})
            if (!(v >= 0.0 && v <= 1.0))
                throw ValidationError("particle set: color/opacity outside [0,1]");
    }
}

}  // namespace stormfield::field
