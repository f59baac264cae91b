#pragma once

#include <filesystem>

#include <json.hpp>

#include "stormfield/field/types.hpp"

namespace stormfield::io {

// JSON mirror of WeatherFieldConfig, field for field. Units: meters,
// seconds, radians. Unknown keys are rejected.
nlohmann::json config_to_json(const field::WeatherFieldConfig& config);
field::WeatherFieldConfig config_from_json(const nlohmann::json& j);
field::WeatherFieldConfig load_config(const std::filesystem::path& path);

}  // namespace stormfield::io
