#pragma once

#include <map>
#include <utility>

#include "stormfield/mat.hpp"

namespace stormfield::attn {

// Token grid for one (frame, view): N tokens x d channels.
struct FeatureGrid {
    Mat tokens;
    int frame_index = 0;
    int view_id = 0;
};

// Grids for a multi-frame, multi-view clip plus shared Q/K/V projections.
// Side views query the center view; temporal context is {t-1, t+1}.
class AttentionBatch {
public:
    AttentionBatch(int center_view, double lambda, Mat wq, Mat wk, Mat wv);

    void add_grid(int frame_index, int view_id, Mat tokens);

    bool has_grid(int frame_index, int view_id) const;
    const Mat& grid(int frame_index, int view_id) const;

    int center_view() const { return center_view_; }
    double lambda() const { return lambda_; }
    const Mat& wq() const { return wq_; }
    const Mat& wk() const { return wk_; }
    const Mat& wv() const { return wv_; }

    // center grid present for every frame index seen anywhere
    void validate() const;

private:
    std::map<std::pair<int, int>, Mat> grids_;  // (frame, view) -> tokens
    int center_view_;
    double lambda_;
    Mat wq_, wk_, wv_;
    std::size_t tokens_ = 0, channels_ = 0;
};

// softmax(Q K^T / sqrt(d)); every row sums to 1
Mat attention_weights(const Mat& q, const Mat& k);
Mat scaled_dot_attention(const Mat& q, const Mat& k, const Mat& v);

// Q, K, V all projected from the grid at (frame, view).
Mat self_attn(const AttentionBatch& batch, int frame, int view);

// Side view queries the center view's keys/values; rejected on the center
// view itself (tv_attn substitutes self-attention there).
Mat view_attn(const AttentionBatch& batch, int frame, int view);

// Keys/values from the same view at t-1 and t+1, clipped at sequence ends;
// rejects single-frame sequences.
Mat temporal_attn(const AttentionBatch& batch, int frame, int view);

// lambda * self + (1 - lambda) * (view + temporal)
Mat tv_attn(const AttentionBatch& batch, int frame, int view);

}  // namespace stormfield::attn
