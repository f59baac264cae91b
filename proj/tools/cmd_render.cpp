#include <algorithm>
#include <cstdio>
#include <map>

#include "stormfield/io/png_io.hpp"
#include "stormfield/io/trajectory.hpp"
#include "stormfield/splat/rasterize.hpp"

#include "common.hpp"

namespace stormfield::cli {

namespace {

std::string frame_file_name(int frame_index, int view_id) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "f%04d_v%d.png", frame_index, view_id);
    return buf;
}

}  // namespace

int run_render(const std::string& manifest_path, const std::string& trajectory_path,
               const FieldSource& source, bool inline_simulate, std::uint64_t seed, double dt,
               const ToggleFlags& toggles, const std::string& out_dir) {
    const io::SceneManifest manifest = io::load_manifest(manifest_path);

    std::vector<field::ParticleSet> particle_frames;
    if (!trajectory_path.empty()) {
        if (inline_simulate)
            throw ValidationError("give either --trajectory or an inline weather source, not both");
        particle_frames = io::read_trajectory(trajectory_path).frames;
    } else if (inline_simulate) {
        const field::WeatherFieldConfig config = source.resolve();
        particle_frames =
            dyn::simulate(config, center_trajectory(manifest), dyn::SimStep::of(dt), seed,
                          toggles.toggles());
    } else {
        throw ValidationError("render needs --trajectory <file> or an inline weather source");
    }

    // everything validated before the first output byte
    const std::vector<int> frame_ids = manifest.frame_indices();
    if (particle_frames.size() != frame_ids.size())
        throw ValidationError("trajectory has " + std::to_string(particle_frames.size()) +
                              " frames but the manifest covers " +
                              std::to_string(frame_ids.size()) + " frame indices");
    std::map<int, std::size_t> ordinal;
    for (std::size_t i = 0; i < frame_ids.size(); ++i) ordinal[frame_ids[i]] = i;

    std::map<std::string, splat::FrameBuffer> backgrounds;
    for (const auto& mf : manifest.frames) {
        const std::string key = mf.background_path.string();
        if (backgrounds.count(key) == 0) backgrounds.emplace(key, io::read_png(mf.background_path));
        const auto& bg = backgrounds.at(key);
        if (bg.width != mf.camera.width || bg.height != mf.camera.height)
            throw ValidationError("background '" + key + "' is " + std::to_string(bg.width) + "x" +
                                  std::to_string(bg.height) + " but the camera expects " +
                                  std::to_string(mf.camera.width) + "x" +
                                  std::to_string(mf.camera.height));
    }

    std::filesystem::create_directories(out_dir);

    // stage everything, then rename into place
    std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged;
    try {
        for (const auto& mf : manifest.frames) {
            const auto& particles = particle_frames[ordinal.at(mf.camera.frame_index)];
            const auto& bg = backgrounds.at(mf.background_path.string());
            const splat::FrameBuffer out = splat::render_frame(particles, mf.camera, bg);

            const std::filesystem::path final_path =
                std::filesystem::path(out_dir) /
                frame_file_name(mf.camera.frame_index, mf.camera.view_id);
            const std::filesystem::path tmp_path = final_path.string() + ".tmp";
            io::write_png(tmp_path, out);
            staged.emplace_back(tmp_path, final_path);
        }
    } catch (...) {
        for (const auto& [tmp, _] : staged) std::filesystem::remove(tmp);
        throw;
    }
    for (const auto& [tmp, final_path] : staged) {
        std::error_code ec;
        std::filesystem::rename(tmp, final_path, ec);
        if (ec) throw IoError("cannot move '" + final_path.string() + "' into place: " + ec.message());
    }

    std::printf("rendered %zu frames into %s\n", staged.size(), out_dir.c_str());
    return kExitOk;
}

}  // namespace stormfield::cli
