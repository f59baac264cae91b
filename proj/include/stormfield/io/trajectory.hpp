#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "stormfield/dynamics/dynamics.hpp"
#include "stormfield/field/types.hpp"

namespace stormfield::io {

// Replayable simulation output: a JSON header (config, seed, dt, toggles,
// version) followed by per-frame binary blocks of little-endian float32
// particle state (pos, quat, scale, color, opacity, velocity = 17 floats).
struct TrajectoryHeader {
    int version = 1;
    field::WeatherFieldConfig config;
    std::uint64_t seed = 0;
    double dt = 0.1;
    dyn::SimToggles toggles;
    std::uint32_t frame_count = 0;
    std::uint32_t quantity = 0;
};

struct Trajectory {
    TrajectoryHeader header;
    std::vector<field::ParticleSet> frames;
};

// Writes to a temp file in the target directory, then renames into place.
void write_trajectory(const std::filesystem::path& path, const TrajectoryHeader& header,
                      std::span<const field::ParticleSet> frames);

Trajectory read_trajectory(const std::filesystem::path& path);

}  // namespace stormfield::io
