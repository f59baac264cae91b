#include "stormfield/attn/attention.hpp"

#include <cmath>
#include <string>

namespace stormfield::attn {

namespace {

std::string key_name(int frame, int view) {
    return "(frame " + std::to_string(frame) + ", view " + std::to_string(view) + ")";
}

}  // namespace

AttentionBatch::AttentionBatch(int center_view, double lambda, Mat wq, Mat wk, Mat wv)
    : center_view_(center_view), lambda_(lambda), wq_(std::move(wq)), wk_(std::move(wk)),
      wv_(std::move(wv)) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw ValidationError("attention batch: lambda must lie in [0,1]");
    if (wq_.rows() != wq_.cols() || !wq_.same_shape(wk_) || !wq_.same_shape(wv_))
        throw ValidationError("attention batch: projections must be square and share one shape");
    channels_ = wq_.rows();
}

void AttentionBatch::add_grid(int frame_index, int view_id, Mat tokens) {
    if (tokens.rows() < 1 || tokens.cols() < 1)
        throw ValidationError("attention batch: empty token grid");
    for (std::size_t i = 0; i < tokens.rows() * tokens.cols(); ++i)
        if (!std::isfinite(tokens.data()[i]))
            throw ValidationError("attention batch: non-finite token");
    if (tokens.cols() != channels_)
        throw ValidationError("attention batch: grid channel count disagrees with projections");
    if (tokens_ == 0) tokens_ = tokens.rows();
    if (tokens.rows() != tokens_)
        throw ValidationError("attention batch: all grids must share one token count");
    const auto key = std::make_pair(frame_index, view_id);
    if (grids_.count(key) != 0)
        throw ValidationError("attention batch: duplicate grid " + key_name(frame_index, view_id));
    grids_.emplace(key, std::move(tokens));
}

bool AttentionBatch::has_grid(int frame_index, int view_id) const {
    return grids_.count(std::make_pair(frame_index, view_id)) != 0;
}

const Mat& AttentionBatch::grid(int frame_index, int view_id) const {
    const auto it = grids_.find(std::make_pair(frame_index, view_id));
    if (it == grids_.end())
        throw ValidationError("attention batch: missing grid " + key_name(frame_index, view_id));
    return it->second;
}

void AttentionBatch::validate() const {
    if (grids_.empty()) throw ValidationError("attention batch: no grids");
    for (const auto& [key, tokens] : grids_) {
        if (!has_grid(key.first, center_view_))
            throw ValidationError("attention batch: frame " + std::to_string(key.first) +
                                  " lacks the center view " + std::to_string(center_view_));
    }
}

Mat attention_weights(const Mat& q, const Mat& k) {
    if (q.cols() != k.cols())
        throw ValidationError("attention: query/key channel counts disagree");
    if (q.rows() < 1 || k.rows() < 1) throw ValidationError("attention: empty operand");
    Mat scores = matmul_bt(q, k);
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(q.cols()));
    for (std::size_t r = 0; r < scores.rows(); ++r) {
        double* row = scores.row(r);
        double hi = row[0] * inv_sqrt_d;
        for (std::size_t c = 0; c < scores.cols(); ++c) {
            row[c] *= inv_sqrt_d;
            hi = std::max(hi, row[c]);
        }
        double sum = 0.0;
        for (std::size_t c = 0; c < scores.cols(); ++c) {
            row[c] = std::exp(row[c] - hi);
            sum += row[c];
        }
        for (std::size_t c = 0; c < scores.cols(); ++c) row[c] /= sum;
    }
    return scores;
}

Mat scaled_dot_attention(const Mat& q, const Mat& k, const Mat& v) {
    if (k.rows() != v.rows())
        throw ValidationError("attention: key/value row counts disagree");
    return matmul(attention_weights(q, k), v);
}

Mat self_attn(const AttentionBatch& batch, int frame, int view) {
    const Mat& x = batch.grid(frame, view);
    return scaled_dot_attention(matmul(x, batch.wq()), matmul(x, batch.wk()),
                                matmul(x, batch.wv()));
}

Mat view_attn(const AttentionBatch& batch, int frame, int view) {
    if (view == batch.center_view())
        throw ValidationError("view attention: the center view has no center to query");
    const Mat& side = batch.grid(frame, view);
    const Mat& center = batch.grid(frame, batch.center_view());
    return scaled_dot_attention(matmul(side, batch.wq()), matmul(center, batch.wk()),
                                matmul(center, batch.wv()));
}

Mat temporal_attn(const AttentionBatch& batch, int frame, int view) {
    const Mat& x = batch.grid(frame, view);
    const bool has_prev = batch.has_grid(frame - 1, view);
    const bool has_next = batch.has_grid(frame + 1, view);
    if (!has_prev && !has_next)
        throw ValidationError("temporal attention: frame " + std::to_string(frame) +
                              " of view " + std::to_string(view) + " has no neighbors");
    Mat context;
    if (has_prev && has_next)
        context = vconcat(batch.grid(frame - 1, view), batch.grid(frame + 1, view));
    else if (has_prev)
        context = batch.grid(frame - 1, view);
    else
        context = batch.grid(frame + 1, view);
    return scaled_dot_attention(matmul(x, batch.wq()), matmul(context, batch.wk()),
                                matmul(context, batch.wv()));
}

Mat tv_attn(const AttentionBatch& batch, int frame, int view) {
    const Mat self = self_attn(batch, frame, view);
    const Mat side = (view == batch.center_view()) ? self : view_attn(batch, frame, view);
    const Mat temporal = temporal_attn(batch, frame, view);
    const double lambda = batch.lambda();
    return lin_comb(lambda, self, 1.0 - lambda, lin_comb(1.0, side, 1.0, temporal));
}

}  // namespace stormfield::attn
