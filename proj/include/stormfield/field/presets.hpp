#pragma once

#include <vector>

#include "stormfield/field/types.hpp"

namespace stormfield::field {

// Preset table entry for one (type, named severity) pair.
struct PresetEntry {
    WeatherType weather;
    SeverityLevel::Name severity;
    WeatherFieldConfig config;
};

const char* severity_name(SeverityLevel::Name name);

// Builds a config from the preset table. Named severities pick the table
// row; a custom multiplier scales the Moderate row's quantity.
WeatherFieldConfig preset(WeatherType weather, const SeverityLevel& severity);

// quantity' = max(1, round(quantity * factor)); everything else unchanged.
WeatherFieldConfig scale_severity(const WeatherFieldConfig& config, double factor);

// Ablation: replaces the type-specific distributions with wide generic ones
// (uniform-ish colors, isotropic blob scales), keeping quantity/bounds/motion.
WeatherFieldConfig randomized_attributes(const WeatherFieldConfig& config);

// All 9 table rows (3 types x 3 severities), in a stable order.
std::vector<PresetEntry> preset_table();

}  // namespace stormfield::field
