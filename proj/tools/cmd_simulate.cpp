#include <cstdio>

#include "stormfield/io/config_json.hpp"
#include "stormfield/io/trajectory.hpp"

#include "common.hpp"

namespace stormfield::cli {

field::WeatherFieldConfig FieldSource::resolve() const {
    if (!config_path.empty() && !weather.empty())
        throw ValidationError("give either --config or --weather, not both");
    if (!config_path.empty()) return io::load_config(config_path);
    if (weather.empty())
        throw ValidationError("a weather source is required: --config <file> or --weather <type>");
    return field::preset(field::parse_weather(weather), field::SeverityLevel::parse(severity));
}

std::vector<splat::CameraFrame> center_trajectory(const io::SceneManifest& manifest) {
    const auto seq = manifest.view_sequence(manifest.center_view);
    std::vector<splat::CameraFrame> cams;
    cams.reserve(seq.size());
    for (const auto* mf : seq) cams.push_back(mf->camera);

    for (const int fi : manifest.frame_indices()) {
        if (manifest.find(fi, manifest.center_view) == nullptr)
            throw ValidationError("manifest: frame " + std::to_string(fi) +
                                  " has no center-view pose to align against");
    }
    return cams;
}

int run_simulate(const std::string& manifest_path, const FieldSource& source,
                 std::uint64_t seed, double dt, const ToggleFlags& toggles,
                 const std::string& out_path) {
    const io::SceneManifest manifest = io::load_manifest(manifest_path);
    const field::WeatherFieldConfig config = source.resolve();
    const auto cams = center_trajectory(manifest);
    const dyn::SimStep step = dyn::SimStep::of(dt);

    const auto frames = dyn::simulate(config, cams, step, seed, toggles.toggles());

    io::TrajectoryHeader header;
    header.config = config;
    header.seed = seed;
    header.dt = dt;
    header.toggles = toggles.toggles();
    header.frame_count = static_cast<std::uint32_t>(frames.size());
    header.quantity = static_cast<std::uint32_t>(config.quantity);
    io::write_trajectory(out_path, header, frames);

    std::printf("wrote %zu frames x %llu particles to %s\n", frames.size(),
                static_cast<unsigned long long>(config.quantity), out_path.c_str());
    return kExitOk;
}

}  // namespace stormfield::cli
