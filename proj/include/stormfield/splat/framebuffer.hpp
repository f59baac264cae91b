#pragma once

#include <vector>

#include "stormfield/error.hpp"

namespace stormfield::splat {

// Interleaved RGB, row-major, channel values in [0,1].
struct FrameBuffer {
    int width = 0, height = 0;
    std::vector<float> rgb;

    FrameBuffer() = default;
    FrameBuffer(int w, int h) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3, 0.f) {}

    static FrameBuffer filled(int w, int h, float r, float g, float b) {
        FrameBuffer fb(w, h);
        for (std::size_t i = 0; i < fb.rgb.size(); i += 3) {
            fb.rgb[i] = r;
            fb.rgb[i + 1] = g;
            fb.rgb[i + 2] = b;
        }
        return fb;
    }

    float* pixel(int x, int y) { return rgb.data() + (static_cast<std::size_t>(y) * width + x) * 3; }
    const float* pixel(int x, int y) const {
        return rgb.data() + (static_cast<std::size_t>(y) * width + x) * 3;
    }
};

inline FrameBuffer crop(const FrameBuffer& fb, int x, int y, int w, int h) {
    if (x < 0 || y < 0 || w < 1 || h < 1 || x + w > fb.width || y + h > fb.height)
        throw ValidationError("crop rectangle outside the image");
    FrameBuffer out(w, h);
    for (int row = 0; row < h; ++row)
        for (int col = 0; col < w; ++col) {
            const float* s = fb.pixel(x + col, y + row);
            float* d = out.pixel(col, row);
            d[0] = s[0];
            d[1] = s[1];
            d[2] = s[2];
        }
    return out;
}

}  // namespace stormfield::splat
