#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stormfield/splat/framebuffer.hpp"

namespace stormfield::metrics {

// Per-channel marginal histogram, normalized to sum 1 per channel.
struct ColorHistogram {
    std::size_t bin_count = 0;
    std::array<std::vector<double>, 3> channels;
};

// Uniform bin edges over [0,1]; value 1.0 lands in the top bin.
ColorHistogram histogram_of(const splat::FrameBuffer& frame, std::size_t bin_count = 256);

// Mean over channels of -ln(max(sum sqrt(p q), 1e-12)). Zero iff identical.
double bhattacharyya_distance(const ColorHistogram& p, const ColorHistogram& q);

// Dense displacement field frame t -> t+1, pixels.
struct FlowField {
    int width = 0, height = 0;
    std::vector<float> u, v;
    std::vector<std::uint8_t> valid;
};

// Backward-warps frame_t1 by the flow (bilinear) and returns the mean
// absolute RGB difference against frame_t over valid, in-bounds pixels.
double warp_error(const splat::FrameBuffer& frame_t, const splat::FrameBuffer& frame_t1,
                  const FlowField& flow);

// Unit-normalized embedding; constructor rescales and rejects ~zero input.
class EmbeddingVec {
public:
    explicit EmbeddingVec(std::vector<double> values);
    std::size_t dim() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

// cosine similarity of two embeddings, in [-1, 1]
double clip_s(const EmbeddingVec& a, const EmbeddingVec& b);

// cosine between (img_edit - img_src) and (txt_target - txt_src); rejects
// difference vectors with norm <= 1e-9
double clip_ds(const EmbeddingVec& img_src, const EmbeddingVec& img_edit,
               const EmbeddingVec& txt_src, const EmbeddingVec& txt_target);

}  // namespace stormfield::metrics
