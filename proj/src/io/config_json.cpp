#include "stormfield/io/config_json.hpp"

#include <fstream>

namespace stormfield::io {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const char* where) {
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) {
                ok = true;
                break;
            }
        if (!ok)
            throw ValidationError(std::string("config: unknown key '") + key + "' in " + where);
    }
}

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec3_from_json(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 3)
        throw ValidationError(std::string("config: ") + where + " must be a 3-element array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json dist3_to_json(const std::array<field::GaussianDist, 3>& d) {
    return json{{"mean", {d[0].mean, d[1].mean, d[2].mean}},
                {"stddev", {d[0].stddev, d[1].stddev, d[2].stddev}}};
}

std::array<field::GaussianDist, 3> dist3_from_json(const json& j, const char* where) {
    if (!j.is_object())
        throw ValidationError(std::string("config: ") + where + " must be an object");
    reject_unknown_keys(j, {"mean", "stddev"}, where);
    const Vec3 mean = vec3_from_json(j.at("mean"), where);
    const Vec3 stddev = vec3_from_json(j.at("stddev"), where);
    return {{{mean.x, stddev.x}, {mean.y, stddev.y}, {mean.z, stddev.z}}};
}

json dist_to_json(const field::GaussianDist& d) {
    return json{{"mean", d.mean}, {"stddev", d.stddev}};
}

field::GaussianDist dist_from_json(const json& j, const char* where) {
    if (!j.is_object())
        throw ValidationError(std::string("config: ") + where + " must be an object");
    reject_unknown_keys(j, {"mean", "stddev"}, where);
    return {j.at("mean").get<double>(), j.at("stddev").get<double>()};
}

}  // namespace

json config_to_json(const field::WeatherFieldConfig& c) {
    return json{{"weather", field::weather_name(c.weather)},
                {"distributions",
                 {{"color", dist3_to_json(c.dists.color)},
                  {"scale", dist3_to_json(c.dists.scale)},
                  {"rotation", dist_to_json(c.dists.rotation)},
                  {"opacity", dist_to_json(c.dists.opacity)}}},
                {"quantity", c.quantity},
                {"bounds", {{"min", vec3_to_json(c.bounds.min)}, {"max", vec3_to_json(c.bounds.max)}}},
                {"velocity", {{"direction", vec3_to_json(c.velocity.direction)}}},
                {"recycle_offset", c.recycle_offset},
                {"jitter", c.jitter}};
}

field::WeatherFieldConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("config: document must be a JSON object");
    reject_unknown_keys(j, {"weather", "distributions", "quantity", "bounds", "velocity",
                            "recycle_offset", "jitter"},
                        "config");

    field::WeatherFieldConfig c;
    try {
        c.weather = field::parse_weather(j.at("weather").get<std::string>());

        const json& dists = j.at("distributions");
        if (!dists.is_object())
            throw ValidationError("config: distributions must be an object");
        reject_unknown_keys(dists, {"color", "scale", "rotation", "opacity"}, "distributions");
        c.dists.color = dist3_from_json(dists.at("color"), "distributions.color");
        c.dists.scale = dist3_from_json(dists.at("scale"), "distributions.scale");
        c.dists.rotation = dist_from_json(dists.at("rotation"), "distributions.rotation");
        c.dists.opacity = dist_from_json(dists.at("opacity"), "distributions.opacity");

        if (!j.at("quantity").is_number_unsigned() && !j.at("quantity").is_number_integer())
            throw ValidationError("config: quantity must be a positive integer");
        const auto q = j.at("quantity").get<long long>();
        if (q < 1) throw ValidationError("config: quantity must be >= 1");
        c.quantity = static_cast<std::uint64_t>(q);

        const json& bounds = j.at("bounds");
        if (!bounds.is_object()) throw ValidationError("config: bounds must be an object");
        reject_unknown_keys(bounds, {"min", "max"}, "bounds");
        c.bounds.min = vec3_from_json(bounds.at("min"), "bounds.min");
        c.bounds.max = vec3_from_json(bounds.at("max"), "bounds.max");

        const json& vel = j.at("velocity");
        if (!vel.is_object()) throw ValidationError("config: velocity must be an object");
        reject_unknown_keys(vel, {"direction"}, "velocity");
        c.velocity.direction = vec3_from_json(vel.at("direction"), "velocity.direction");

        c.recycle_offset = j.at("recycle_offset").get<double>();
        c.jitter = j.at("jitter").get<double>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

field::WeatherFieldConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("config file '" + path.string() + "': " + e.what());
    }
    return config_from_json(j);
}

}  // namespace stormfield::io
