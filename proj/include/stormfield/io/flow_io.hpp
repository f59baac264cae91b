#pragma once

#include <filesystem>

#include "stormfield/metrics/metrics.hpp"

namespace stormfield::io {

// Raw flow file: little-endian float32 u-plane, then v-plane, then one
// validity byte per pixel. Dimensions live in a JSON sidecar at
// "<path>.json" with {"width": W, "height": H}.
metrics::FlowField read_flow(const std::filesystem::path& path);
void write_flow(const std::filesystem::path& path, const metrics::FlowField& flow);

}  // namespace stormfield::io
