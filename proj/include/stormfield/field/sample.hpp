#pragma once

#include <cstdint>

#include "stormfield/field/types.hpp"

namespace stormfield::field {

// Draws the initial field: positions uniform over the bounds, the remaining
// attributes from the config's Gaussian distributions (clamped to their valid
// ranges), per-particle velocity = config velocity + jitter draw. Pure
// function of (config, seed).
ParticleSet sample_field(const WeatherFieldConfig& config, std::uint64_t seed);

}  // namespace stormfield::field
