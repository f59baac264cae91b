#pragma once

#include <filesystem>

#include "stormfield/splat/framebuffer.hpp"

namespace stormfield::io {

// 8-bit RGB PNG in/out. Channel bytes map linearly to [0,1] (no gamma
// handling); writing uses round(v*255), so a read-write round trip is exact.
// The encoder settings are pinned, so identical pixels give identical bytes.
splat::FrameBuffer read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const splat::FrameBuffer& frame);

}  // namespace stormfield::io
