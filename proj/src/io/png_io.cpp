#include "stormfield/io/png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

namespace stormfield::io {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_error_fn(png_structp png, png_const_charp msg) {
    throw IoError(std::string("png: ") + msg);
    (void)png;
}

void png_warn_fn(png_structp, png_const_charp) {}

}  // namespace

splat::FrameBuffer read_png(const std::filesystem::path& path) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) throw IoError("cannot open '" + path.string() + "' for reading");

    png_structp png =
        png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warn_fn);
    if (!png) throw IoError("png: failed to allocate read struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("png: failed to allocate info struct");
    }

    try {
        png_init_io(png, file.get());
        png_read_info(png, info);

        png_set_expand(png);           // palettes / low bit depths -> 8-bit
        png_set_strip_16(png);
        png_set_strip_alpha(png);
        png_set_gray_to_rgb(png);
        png_read_update_info(png, info);

        const png_uint_32 w = png_get_image_width(png, info);
        const png_uint_32 h = png_get_image_height(png, info);
        if (png_get_channels(png, info) != 3 || png_get_bit_depth(png, info) != 8)
            throw IoError("png: '" + path.string() + "' did not decode to 8-bit RGB");

        std::vector<png_byte> data(static_cast<std::size_t>(w) * h * 3);
        std::vector<png_bytep> rows(h);
        for (png_uint_32 y = 0; y < h; ++y)
            rows[y] = data.data() + static_cast<std::size_t>(y) * w * 3;
        png_read_image(png, rows.data());
        png_read_end(png, nullptr);
        png_destroy_read_struct(&png, &info, nullptr);

        splat::FrameBuffer fb(static_cast<int>(w), static_cast<int>(h));
        for (std::size_t i = 0; i < data.size(); ++i)
            fb.rgb[i] = static_cast<float>(data[i]) / 255.0f;
        return fb;
    } catch (...) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw;
    }
}

void write_png(const std::filesystem::path& path, const splat::FrameBuffer& frame) {
    if (frame.width < 1 || frame.height < 1 ||
        frame.rgb.size() != static_cast<std::size_t>(frame.width) * frame.height * 3)
        throw ValidationError("png: malformed frame buffer");

    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) throw IoError("cannot open '" + path.string() + "' for writing");

    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warn_fn);
    if (!png) throw IoError("png: failed to allocate write struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("png: failed to allocate info struct");
    }

    try {
        png_init_io(png, file.get());
        png_set_compression_level(png, 6);
        png_set_IHDR(png, info, static_cast<png_uint_32>(frame.width),
                     static_cast<png_uint_32>(frame.height), 8, PNG_COLOR_TYPE_RGB,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);

        std::vector<png_byte> row(static_cast<std::size_t>(frame.width) * 3);
        for (int y = 0; y < frame.height; ++y) {
            const float* src = frame.pixel(0, y);
            for (std::size_t i = 0; i < row.size(); ++i) {
                const float v = std::clamp(src[i], 0.0f, 1.0f);
                row[i] = static_cast<png_byte>(std::lround(v * 255.0f));
            }
            png_write_row(png, row.data());
        }
        png_write_end(png, nullptr);
        png_destroy_write_struct(&png, &info);
    } catch (...) {
        png_destroy_write_struct(&png, &info);
        throw;
    }
}

}  // namespace stormfield::io
