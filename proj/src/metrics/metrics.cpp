#include "stormfield/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace stormfield::metrics {

namespace {

constexpr double kBcFloor = 1e-12;  // keeps the distance finite on disjoint supports

}  // namespace

ColorHistogram histogram_of(const splat::FrameBuffer& frame, std::size_t bin_count) {
    if (bin_count < 2) throw ValidationError("histogram: bin_count must be >= 2");
    if (frame.width < 1 || frame.height < 1 || frame.rgb.empty())
        throw ValidationError("histogram: empty frame");

    ColorHistogram h;
    h.bin_count = bin_count;
    for (auto& c : h.channels) c.assign(bin_count, 0.0);

    const std::size_t pixels = static_cast<std::size_t>(frame.width) * frame.height;
    for (std::size_t i = 0; i < pixels; ++i) {
        for (int c = 0; c < 3; ++c) {
            const double v = std::clamp<double>(frame.rgb[i * 3 + c], 0.0, 1.0);
            std::size_t bin = static_cast<std::size_t>(v * static_cast<double>(bin_count));
            if (bin >= bin_count) bin = bin_count - 1;  // v == 1.0
            h.channels[static_cast<std::size_t>(c)][bin] += 1.0;
        }
    }
    const double inv = 1.0 / static_cast<double>(pixels);
    for (auto& c : h.channels)
        for (double& b : c) b *= inv;
    return h;
}

double bhattacharyya_distance(const ColorHistogram& p, const ColorHistogram& q) {
    if (p.bin_count != q.bin_count || p.bin_count == 0)
        throw ValidationError("bhattacharyya: histogram bin counts disagree");
    double total = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto& pc = p.channels[static_cast<std::size_t>(c)];
        const auto& qc = q.channels[static_cast<std::size_t>(c)];
        if (pc == qc) continue;  // identical distributions contribute exactly 0
        double bc = 0.0;
        for (std::size_t k = 0; k < p.bin_count; ++k) bc += std::sqrt(pc[k] * qc[k]);
        bc = std::min(bc, 1.0);  // rounding can nudge the coefficient past 1
        total += -std::log(std::max(bc, kBcFloor));
    }
    return total / 3.0;
}

double warp_error(const splat::FrameBuffer& frame_t, const splat::FrameBuffer& frame_t1,
                  const FlowField& flow) {
    const int w = frame_t.width, h = frame_t.height;
    if (frame_t1.width != w || frame_t1.height != h || flow.width != w || flow.height != h)
        throw ValidationError("warp error: frame/flow dimensions disagree");
    const std::size_t n = static_cast<std::size_t>(w) * h;
    if (flow.u.size() != n || flow.v.size() != n || flow.valid.size() != n)
        throw ValidationError("warp error: malformed flow field");
    bool any_valid = false;
    for (std::uint8_t m : flow.valid)
        if (m != 0) {
            any_valid = true;
            break;
        }
    if (!any_valid) throw ValidationError("warp error: empty validity mask");

    double sum = 0.0;
    std::size_t count = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (flow.valid[i] == 0) continue;
            const double sx_pos = x + static_cast<double>(flow.u[i]);
            const double sy_pos = y + static_cast<double>(flow.v[i]);
            if (!(sx_pos >= 0.0) || !(sy_pos >= 0.0) || !(sx_pos <= w - 1.0) ||
                !(sy_pos <= h - 1.0))
                continue;  // sample would leave the image

            const int x0 = static_cast<int>(sx_pos);
            const int y0 = static_cast<int>(sy_pos);
            const int x1 = std::min(x0 + 1, w - 1);
            const int y1 = std::min(y0 + 1, h - 1);
            const double fx = sx_pos - x0;
            const double fy = sy_pos - y0;

            const float* p00 = frame_t1.pixel(x0, y0);
            const float* p10 = frame_t1.pixel(x1, y0);
            const float* p01 = frame_t1.pixel(x0, y1);
            const float* p11 = frame_t1.pixel(x1, y1);
            const float* ref = frame_t.pixel(x, y);
            for (int c = 0; c < 3; ++c) {
                const double top = p00[c] + (p10[c] - static_cast<double>(p00[c])) * fx;
                const double bot = p01[c] + (p11[c] - static_cast<double>(p01[c])) * fx;
                const double sample = top + (bot - top) * fy;
                sum += std::abs(sample - ref[c]);
            }
            ++count;
        }
    }
    if (count == 0)
        throw ValidationError("warp error: every valid pixel samples outside the image");
    return sum / (3.0 * static_cast<double>(count));
}

EmbeddingVec::EmbeddingVec(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw ValidationError("embedding: empty vector");
    double sq = 0.0;
    for (double v : values_) {
        if (!std::isfinite(v)) throw ValidationError("embedding: non-finite component");
        sq += v * v;
    }
    const double norm = std::sqrt(sq);
    if (!(norm > 1e-12)) throw ValidationError("embedding: vector norm is ~zero");
    for (double& v : values_) v /= norm;
}

double clip_s(const EmbeddingVec& a, const EmbeddingVec& b) {
    if (a.dim() != b.dim()) throw ValidationError("clip-s: embedding dimensions disagree");
    double dot = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) dot += a.values()[i] * b.values()[i];
    return std::clamp(dot, -1.0, 1.0);
}

double clip_ds(const EmbeddingVec& img_src, const EmbeddingVec& img_edit,
               const EmbeddingVec& txt_src, const EmbeddingVec& txt_target) {
    if (img_src.dim() != img_edit.dim() || txt_src.dim() != txt_target.dim() ||
        img_src.dim() != txt_src.dim())
        throw ValidationError("clip-ds: embedding dimensions disagree");
    const std::size_t d = img_src.dim();
    double ii = 0.0, tt = 0.0, it = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double di = img_edit.values()[i] - img_src.values()[i];
        const double dt = txt_target.values()[i] - txt_src.values()[i];
        ii += di * di;
        tt += dt * dt;
        it += di * dt;
    }
    const double ni = std::sqrt(ii), nt = std::sqrt(tt);
    if (!(ni > 1e-9) || !(nt > 1e-9))
        throw ValidationError("clip-ds: degenerate (near-zero) difference vector");
    return std::clamp(it / (ni * nt), -1.0, 1.0);
}

}  // namespace stormfield::metrics
