#include "stormfield/splat/rasterize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "stormfield/kernels/kernels.hpp"
#include "stormfield/parallel.hpp"

namespace stormfield::splat {

namespace {

constexpr int kTile = 16;
// Tile is done once every pixel's remaining transmittance drops below this;
// skipping perturbs a pixel by < 1e-10.
constexpr double kStopTransmittance = 1e-10;
constexpr int kStopCheckStride = 32;

struct PreparedSplat {
    double conic[3];
    double rgb[3];
    double opacity;
    double center_x, center_y;
    PixelRect rect;
};

}  // namespace

FrameBuffer rasterize(std::span<const Splat2D> splats, const FrameBuffer& background) {
    const int w = background.width;
    const int h = background.height;
    if (w < 1 || h < 1 || background.rgb.size() != static_cast<std::size_t>(w) * h * 3)
        throw ValidationError("rasterize: malformed background buffer");

    // depth order, ties by input index
    std::vector<std::uint32_t> order(splats.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return splats[a].depth < splats[b].depth;
    });

    std::vector<PreparedSplat> prepared;
    prepared.reserve(splats.size());
    for (const std::uint32_t idx : order) {
        const Splat2D& s = splats[idx];
        if (!std::isfinite(s.center_x) || !std::isfinite(s.center_y) ||
            !std::isfinite(s.opacity) || !(s.depth > 0.0))
            throw ValidationError("rasterize: non-finite splat " + std::to_string(idx));
        const double det = s.cov_xx * s.cov_yy - s.cov_xy * s.cov_xy;
        if (!(det > 0.0) || !(s.cov_xx > 0.0))
            throw ValidationError("rasterize: splat " + std::to_string(idx) +
                                  " covariance not positive-definite");
        PreparedSplat p;
        p.conic[0] = s.cov_yy / det;
        p.conic[1] = -s.cov_xy / det;
        p.conic[2] = s.cov_xx / det;
        p.rgb[0] = s.r;
        p.rgb[1] = s.g;
        p.rgb[2] = s.b;
        p.opacity = s.opacity;
        p.center_x = s.center_x;
        p.center_y = s.center_y;
        p.rect = footprint_rect(s, w, h);
        if (!p.rect.empty()) prepared.push_back(p);
    }

    const int tiles_x = (w + kTile - 1) / kTile;
    const int tiles_y = (h + kTile - 1) / kTile;
    std::vector<std::vector<std::uint32_t>> tile_lists(
        static_cast<std::size_t>(tiles_x) * tiles_y);
    for (std::uint32_t i = 0; i < prepared.size(); ++i) {
        const PixelRect& r = prepared[i].rect;
        for (int ty = r.y0 / kTile; ty <= r.y1 / kTile; ++ty)
            for (int tx = r.x0 / kTile; tx <= r.x1 / kTile; ++tx)
                tile_lists[static_cast<std::size_t>(ty) * tiles_x + tx].push_back(i);
    }

    FrameBuffer out = background;
    const auto& kern = kernels::active_table();

    parallel_for(tile_lists.size(), [&](std::size_t t0, std::size_t t1) {
        double acc_r[kTile * kTile], acc_g[kTile * kTile], acc_b[kTile * kTile];
        double trans[kTile * kTile];
        for (std::size_t t = t0; t < t1; ++t) {
            const auto& list = tile_lists[t];
            if (list.empty()) continue;  // background already in place

            const int tx = static_cast<int>(t) % tiles_x;
            const int ty = static_cast<int>(t) / tiles_x;
            const int px0 = tx * kTile;
            const int py0 = ty * kTile;
            const int tw = std::min(kTile, w - px0);
            const int th = std::min(kTile, h - py0);
            const std::size_t count = static_cast<std::size_t>(tw) * th;

            std::fill_n(acc_r, count, 0.0);
            std::fill_n(acc_g, count, 0.0);
            std::fill_n(acc_b, count, 0.0);
            std::fill_n(trans, count, 1.0);

            int since_check = 0;
            for (const std::uint32_t si : list) {
                const PreparedSplat& p = prepared[si];
                const int rx0 = std::max(p.rect.x0, px0);
                const int rx1 = std::min(p.rect.x1, px0 + tw - 1);
                const int ry0 = std::max(p.rect.y0, py0);
                const int ry1 = std::min(p.rect.y1, py0 + th - 1);
                for (int y = ry0; y <= ry1; ++y) {
                    const std::size_t off =
                        static_cast<std::size_t>(y - py0) * tw + (rx0 - px0);
                    kern.splat_row(acc_r + off, acc_g + off, acc_b + off, trans + off,
                                   static_cast<std::size_t>(rx1 - rx0 + 1),
                                   static_cast<double>(rx0) - p.center_x,
                                   static_cast<double>(y) - p.center_y, p.conic, p.opacity,
                                   p.rgb);
                }
                if (++since_check >= kStopCheckStride) {
                    since_check = 0;
                    double max_t = 0.0;
                    for (std::size_t i = 0; i < count; ++i) max_t = std::max(max_t, trans[i]);
                    if (max_t < kStopTransmittance) break;
                }
            }

            for (int y = 0; y < th; ++y) {
                float* dst = out.pixel(px0, py0 + y);
                const std::size_t row = static_cast<std::size_t>(y) * tw;
                for (int x = 0; x < tw; ++x) {
                    const float* bg = background.pixel(px0 + x, py0 + y);
                    const double tr = trans[row + x];
                    dst[0] = static_cast<float>(
                        std::clamp(acc_r[row + x] + static_cast<double>(bg[0]) * tr, 0.0, 1.0));
                    dst[1] = static_cast<float>(
                        std::clamp(acc_g[row + x] + static_cast<double>(bg[1]) * tr, 0.0, 1.0));
                    dst[2] = static_cast<float>(
                        std::clamp(acc_b[row + x] + static_cast<double>(bg[2]) * tr, 0.0, 1.0));
                    dst += 3;
                }
            }
        }
    });

    return out;
}

FrameBuffer render_frame(const field::ParticleSet& particles, const CameraFrame& camera,
                         const FrameBuffer& background) {
    if (background.width != camera.width || background.height != camera.height)
        throw ValidationError("render: background is " + std::to_string(background.width) + "x" +
                              std::to_string(background.height) + " but the camera expects " +
                              std::to_string(camera.width) + "x" + std::to_string(camera.height));
    std::vector<Splat2D> splats;
    splats.reserve(particles.size());
    for (std::size_t i = 0; i < particles.size(); ++i) {
        if (auto s = project(particles, i, camera)) splats.push_back(*s);
    }
    return rasterize(splats, background);
}

std::vector<FrameBuffer> render_sequence(std::span<const SequenceItem> items) {
    std::vector<FrameBuffer> out;
    out.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        try {
            out.push_back(render_frame(*items[i].particles, *items[i].camera,
                                       *items[i].background));
        } catch (const ValidationError& e) {
            throw ValidationError("frame " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace stormfield::splat
