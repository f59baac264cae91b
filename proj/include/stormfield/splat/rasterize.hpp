#pragma once

#include <span>
#include <vector>

#include "stormfield/splat/framebuffer.hpp"
#include "stormfield/splat/project.hpp"

namespace stormfield::splat {

// Depth-sorted front-to-back alpha compositing over the background. Equal
// depths tie-break by input index. Pixels outside every footprint reproduce
// the background bit-exactly.
FrameBuffer rasterize(std::span<const Splat2D> splats, const FrameBuffer& background);

// project + rasterize for one frame; background must match the camera size.
FrameBuffer render_frame(const field::ParticleSet& particles, const CameraFrame& camera,
                         const FrameBuffer& background);

struct SequenceItem {
    const field::ParticleSet* particles;
    const CameraFrame* camera;
    const FrameBuffer* background;
};

// Maps render_frame over the items; failures carry the offending index.
std::vector<FrameBuffer> render_sequence(std::span<const SequenceItem> items);

}  // namespace stormfield::splat
