#include "stormfield/field/presets.hpp"

#include <cmath>

namespace stormfield::field {

namespace {

// Bounds and velocities are expressed in the field frame (the first camera's
// axes: +x right, +y down, +z forward), so "falling" means +y.

WeatherFieldConfig snow_base() {
    WeatherFieldConfig c;
    c.weather = WeatherType::Snow;
    c.dists.color = {{{0.92, 0.02}, {0.93, 0.02}, {0.95, 0.02}}};
    c.dists.scale = {{{0.013, 0.004}, {0.013, 0.004}, {0.013, 0.004}}};
    c.dists.rotation = {0.6, 0.35};
    c.dists.opacity = {0.75, 0.10};
    c.quantity = 7000;
    c.bounds = {{-10.0, -8.0, 0.2}, {10.0, 8.0, 28.0}};
    c.velocity = {{0.25, 1.6, 0.0}};
    c.recycle_offset = 0.25;
    c.jitter = 0.0;
    return c;
}

WeatherFieldConfig rain_base() {
    WeatherFieldConfig c;
    c.weather = WeatherType::Rain;
    c.dists.color = {{{0.62, 0.03}, {0.66, 0.03}, {0.72, 0.03}}};
    // streaks: elongated along the fall axis
    c.dists.scale = {{{0.0022, 0.0006}, {0.11, 0.025}, {0.0022, 0.0006}}};
    c.dists.rotation = {0.06, 0.03};
    c.dists.opacity = {0.12, 0.04};
    c.quantity = 12000;
    c.bounds = {{-10.0, -8.0, 0.2}, {10.0, 8.0, 28.0}};
    c.velocity = {{0.4, 9.0, 0.0}};
    c.recycle_offset = 0.25;
    c.jitter = 0.0;
    return c;
}

WeatherFieldConfig fog_base() {
    WeatherFieldConfig c;
    c.weather = WeatherType::Fog;
    c.dists.color = {{{0.78, 0.015}, {0.79, 0.015}, {0.81, 0.015}}};
    c.dists.scale = {{{5.5, 1.8}, {2.2, 0.8}, {5.5, 1.8}}};
    c.dists.rotation = {0.0, 0.0};
    c.dists.opacity = {0.055, 0.02};
    c.quantity = 900;
    c.bounds = {{-22.0, -7.0, 0.2}, {22.0, 7.0, 45.0}};
    c.velocity = {{0.3, 0.0, 0.0}};
    c.recycle_offset = 1.0;
    c.jitter = 0.0;
    return c;
}

WeatherFieldConfig base_for(WeatherType type) {
    switch (type) {
        case WeatherType::Snow: return snow_base();
        case WeatherType::Rain: return rain_base();
        case WeatherType::Fog: return fog_base();
    }
    throw ValidationError("preset: invalid weather type");
}

std::uint64_t named_quantity(WeatherType type, SeverityLevel::Name name) {
    switch (type) {
        case WeatherType::Snow:
            switch (name) {
                case SeverityLevel::Name::Light: return 2500;
                case SeverityLevel::Name::Moderate: return 7000;
                case SeverityLevel::Name::Heavy: return 18000;
            }
            break;
        case WeatherType::Rain:
            switch (name) {
                case SeverityLevel::Name::Light: return 4000;
                case SeverityLevel::Name::Moderate: return 12000;
                case SeverityLevel::Name::Heavy: return 30000;
            }
            break;
        case WeatherType::Fog:
            switch (name) {
                case SeverityLevel::Name::Light: return 350;
                case SeverityLevel::Name::Moderate: return 900;
                case SeverityLevel::Name::Heavy: return 2200;
            }
            break;
    }
    throw ValidationError("preset: invalid severity");
}

}  // namespace

const char* severity_name(SeverityLevel::Name name) {
    switch (name) {
        case SeverityLevel::Name::Light: return "light";
        case SeverityLevel::Name::Moderate: return "moderate";
        case SeverityLevel::Name::Heavy: return "heavy";
    }
    return "unknown";
}

WeatherFieldConfig preset(WeatherType weather, const SeverityLevel& severity) {
    WeatherFieldConfig c = base_for(weather);
    if (severity.name.has_value()) {
        c.quantity = named_quantity(weather, *severity.name);
        return c;
    }
    return scale_severity(c, severity.multiplier);
}

WeatherFieldConfig scale_severity(const WeatherFieldConfig& config, double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw ValidationError("scale_severity: factor must be a positive finite number");
    WeatherFieldConfig c = config;
    const double scaled = std::round(static_cast<double>(config.quantity) * factor);
    c.quantity = scaled < 1.0 ? 1 : static_cast<std::uint64_t>(scaled);
    return c;
}

WeatherFieldConfig randomized_attributes(const WeatherFieldConfig& config) {
    WeatherFieldConfig c = config;
    c.dists.color = {{{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}};
    c.dists.scale = {{{0.5, 0.3}, {0.5, 0.3}, {0.5, 0.3}}};
    c.dists.rotation = {0.0, 1.0};
    c.dists.opacity = {0.6, 0.3};
    return c;
}

std::vector<PresetEntry> preset_table() {
    std::vector<PresetEntry> rows;
    for (WeatherType type : {WeatherType::Snow, WeatherType::Rain, WeatherType::Fog}) {
        for (SeverityLevel::Name name : {SeverityLevel::Name::Light, SeverityLevel::Name::Moderate,
                                         SeverityLevel::Name::Heavy}) {
            rows.push_back({type, name, preset(type, SeverityLevel{name, 1.0})});
        }
    }
    return rows;
}

}  // namespace stormfield::field
