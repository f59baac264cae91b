#include "stormfield/io/trajectory.hpp"

#include <fstream>

#include <json.hpp>

#include "stormfield/io/config_json.hpp"

#include "bytes.hpp"

namespace stormfield::io {

using nlohmann::json;

namespace {

constexpr char kMagic[4] = {'S', 'F', 'T', 'J'};
constexpr std::uint32_t kVersion = 1;

json header_to_json(const TrajectoryHeader& h) {
    return json{{"version", h.version},
                {"config", config_to_json(h.config)},
                {"seed", h.seed},
                {"dt", h.dt},
                {"toggles",
                 {{"alignment", h.toggles.alignment},
                  {"dynamics", h.toggles.dynamics},
                  {"attributes", h.toggles.attributes}}},
                {"frame_count", h.frame_count},
                {"quantity", h.quantity}};
}

TrajectoryHeader header_from_json(const json& j) {
    TrajectoryHeader h;
    try {
        h.version = j.at("version").get<int>();
        h.config = config_from_json(j.at("config"));
        h.seed = j.at("seed").get<std::uint64_t>();
        h.dt = j.at("dt").get<double>();
        h.toggles.alignment = j.at("toggles").at("alignment").get<bool>();
        h.toggles.dynamics = j.at("toggles").at("dynamics").get<bool>();
        h.toggles.attributes = j.at("toggles").at("attributes").get<bool>();
        h.frame_count = j.at("frame_count").get<std::uint32_t>();
        h.quantity = j.at("quantity").get<std::uint32_t>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("trajectory header: ") + e.what());
    }
    return h;
}

void write_particle_block(std::ostream& out, const field::ParticleSet& set) {
    for (std::size_t i = 0; i < set.size(); ++i) {
        const double values[17] = {set.px[i], set.py[i], set.pz[i], set.qw[i], set.qx[i],
                                   set.qy[i], set.qz[i], set.sx[i], set.sy[i], set.sz[i],
                                   set.cr[i], set.cg[i], set.cb[i], set.opacity[i],
                                   set.vx[i], set.vy[i], set.vz[i]};
        for (double v : values) detail::write_f32le(out, static_cast<float>(v));
    }
}

field::ParticleSet read_particle_block(std::istream& in, std::uint32_t count,
                                       const std::filesystem::path& path) {
    field::ParticleSet set;
    set.resize(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        float values[17];
        for (float& v : values)
            if (!detail::read_f32le(in, v))
                throw ValidationError("trajectory '" + path.string() + "' is truncated");
        set.px[i] = values[0];
        set.py[i] = values[1];
        set.pz[i] = values[2];
        set.qw[i] = values[3];
        set.qx[i] = values[4];
        set.qy[i] = values[5];
        set.qz[i] = values[6];
        set.sx[i] = values[7];
        set.sy[i] = values[8];
        set.sz[i] = values[9];
        set.cr[i] = values[10];
        set.cg[i] = values[11];
        set.cb[i] = values[12];
        set.opacity[i] = values[13];
        set.vx[i] = values[14];
        set.vy[i] = values[15];
        set.vz[i] = values[16];
    }
    return set;
}

}  // namespace

void write_trajectory(const std::filesystem::path& path, const TrajectoryHeader& header,
                      std::span<const field::ParticleSet> frames) {
    if (frames.size() != header.frame_count)
        throw ValidationError("trajectory write: header frame_count disagrees with frames");
    for (const auto& f : frames)
        if (f.size() != header.quantity)
            throw ValidationError("trajectory write: frame particle count disagrees with header");

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");

        out.write(kMagic, 4);
        detail::write_u32le(out, kVersion);
        const std::string header_text = header_to_json(header).dump();
        detail::write_u64le(out, header_text.size());
        out.write(header_text.data(), static_cast<std::streamsize>(header_text.size()));

        std::uint32_t ordinal = 0;
        for (const auto& f : frames) {
            detail::write_u32le(out, ordinal++);
            detail::write_u32le(out, static_cast<std::uint32_t>(f.size()));
            write_particle_block(out, f);
        }
        if (!out) throw IoError("failed writing trajectory '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("cannot move trajectory into place at '" + path.string() +
                      "': " + ec.message());
    }
}

Trajectory read_trajectory(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open trajectory '" + path.string() + "'");

    char magic[4];
    if (!in.read(magic, 4) || std::string_view(magic, 4) != std::string_view(kMagic, 4))
        throw ValidationError("trajectory '" + path.string() + "': bad magic");
    std::uint32_t version = 0;
    if (!detail::read_u32le(in, version) || version != kVersion)
        throw ValidationError("trajectory '" + path.string() + "': unsupported version");
    std::uint64_t header_len = 0;
    if (!detail::read_u64le(in, header_len) || header_len == 0 || header_len > (1u << 20))
        throw ValidationError("trajectory '" + path.string() + "': bad header length");

    std::string header_text(header_len, '\0');
    if (!in.read(header_text.data(), static_cast<std::streamsize>(header_len)))
        throw ValidationError("trajectory '" + path.string() + "' is truncated");

    Trajectory traj;
    try {
        traj.header = header_from_json(json::parse(header_text));
    } catch (const json::exception& e) {
        throw ValidationError("trajectory '" + path.string() + "': " + e.what());
    }

    traj.frames.reserve(traj.header.frame_count);
    for (std::uint32_t f = 0; f < traj.header.frame_count; ++f) {
        std::uint32_t ordinal = 0, count = 0;
        if (!detail::read_u32le(in, ordinal) || !detail::read_u32le(in, count))
            throw ValidationError("trajectory '" + path.string() + "' is truncated");
        if (ordinal != f)
            throw ValidationError("trajectory '" + path.string() + "': frame blocks out of order");
        if (count != traj.header.quantity)
            throw ValidationError("trajectory '" + path.string() +
                                  "': block count disagrees with header quantity");
        traj.frames.push_back(read_particle_block(in, count, path));
    }
    char extra;
    if (in.read(&extra, 1))
        throw ValidationError("trajectory '" + path.string() + "' has trailing bytes");
    return traj;
}

}  // namespace stormfield::io
