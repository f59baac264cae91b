#pragma once

// Little-endian scalar serialization helpers for the binary file formats.

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>

namespace stormfield::io::detail {

inline void write_u32le(std::ostream& out, std::uint32_t v) {
    const unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                                static_cast<unsigned char>((v >> 8) & 0xff),
                                static_cast<unsigned char>((v >> 16) & 0xff),
                                static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

inline void write_u64le(std::ostream& out, std::uint64_t v) {
    write_u32le(out, static_cast<std::uint32_t>(v & 0xffffffffu));
    write_u32le(out, static_cast<std::uint32_t>(v >> 32));
}

inline void write_f32le(std::ostream& out, float v) {
    write_u32le(out, std::bit_cast<std::uint32_t>(v));
}

inline bool read_u32le(std::istream& in, std::uint32_t& v) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) return false;
    v = static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
        (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    return true;
}

inline bool read_u64le(std::istream& in, std::uint64_t& v) {
    std::uint32_t lo = 0, hi = 0;
    if (!read_u32le(in, lo) || !read_u32le(in, hi)) return false;
    v = static_cast<std::uint64_t>(lo) | (static_cast<std::uint64_t>(hi) << 32);
    return true;
}

inline bool read_f32le(std::istream& in, float& v) {
    std::uint32_t bits = 0;
    if (!read_u32le(in, bits)) return false;
    v = std::bit_cast<float>(bits);
    return true;
}

}  // namespace stormfield::io::detail
