#include "stormfield/io/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

namespace stormfield::io {

using nlohmann::json;

std::vector<int> SceneManifest::frame_indices() const {
    std::set<int> s;
    for (const auto& f : frames) s.insert(f.camera.frame_index);
    return {s.begin(), s.end()};
}

std::vector<int> SceneManifest::view_ids() const {
    std::set<int> s;
    for (const auto& f : frames) s.insert(f.camera.view_id);
    return {s.begin(), s.end()};
}

std::vector<const ManifestFrame*> SceneManifest::view_sequence(int view_id) const {
    std::vector<const ManifestFrame*> seq;
    for (const auto& f : frames)
        if (f.camera.view_id == view_id) seq.push_back(&f);
    std::sort(seq.begin(), seq.end(), [](const ManifestFrame* a, const ManifestFrame* b) {
        return a->camera.frame_index < b->camera.frame_index;
    });
    return seq;
}

const ManifestFrame* SceneManifest::find(int frame_index, int view_id) const {
    for (const auto& f : frames)
        if (f.camera.frame_index == frame_index && f.camera.view_id == view_id) return &f;
    return nullptr;
}

namespace {

splat::CameraFrame camera_from_json(const json& jf, const std::string& where) {
    splat::CameraFrame cam;
    cam.frame_index = jf.at("frame_index").get<int>();
    cam.view_id = jf.at("view_id").get<int>();

    const json& pose = jf.at("pose");
    if (!pose.is_array() || pose.size() != 16)
        throw ValidationError(where + ": pose must be 16 row-major reals");
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            cam.rotation(r, c) = pose[static_cast<std::size_t>(r * 4 + c)].get<double>();
    cam.translation = {pose[3].get<double>(), pose[7].get<double>(), pose[11].get<double>()};
    const double bottom[4] = {pose[12].get<double>(), pose[13].get<double>(),
                              pose[14].get<double>(), pose[15].get<double>()};
    if (bottom[0] != 0.0 || bottom[1] != 0.0 || bottom[2] != 0.0 || bottom[3] != 1.0)
        throw ValidationError(where + ": pose bottom row must be [0 0 0 1]");

    const json& intr = jf.at("intrinsics");
    cam.fx = intr.at("fx").get<double>();
    cam.fy = intr.at("fy").get<double>();
    cam.cx = intr.at("cx").get<double>();
    cam.cy = intr.at("cy").get<double>();
    cam.width = intr.at("width").get<int>();
    cam.height = intr.at("height").get<int>();
    return cam;
}

}  // namespace

SceneManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("manifest '" + path.string() + "': " + e.what());
    }

    SceneManifest manifest;
    const std::filesystem::path base = path.parent_path();
    try {
        manifest.center_view = j.at("center_view").get<int>();
        const json& frames = j.at("frames");
        if (!frames.is_array() || frames.empty())
            throw ValidationError("manifest: frames must be a non-empty array");

        std::set<std::pair<int, int>> seen;
        for (std::size_t i = 0; i < frames.size(); ++i) {
            const std::string where = "manifest frame entry " + std::to_string(i);
            ManifestFrame mf;
            mf.camera = camera_from_json(frames[i], where);
            mf.camera.validate();

            const auto key = std::make_pair(mf.camera.frame_index, mf.camera.view_id);
            if (!seen.insert(key).second)
                throw ValidationError(where + ": duplicate (frame_index, view_id)");

            const auto rel = frames[i].at("background_path").get<std::string>();
            mf.background_path = base / rel;
            if (!std::filesystem::exists(mf.background_path))
                throw ValidationError(where + ": background file '" +
                                      mf.background_path.string() + "' does not exist");
            manifest.frames.push_back(std::move(mf));
        }
    } catch (const json::exception& e) {
        throw ValidationError("manifest '" + path.string() + "': " + e.what());
    }

    // contiguous frame indices per view
    for (const int view : manifest.view_ids()) {
        const auto seq = manifest.view_sequence(view);
        for (std::size_t i = 1; i < seq.size(); ++i) {
            const int prev = seq[i - 1]->camera.frame_index;
            const int cur = seq[i]->camera.frame_index;
            if (cur != prev + 1)
                throw ValidationError("manifest: view " + std::to_string(view) +
                                      " frame indices are not contiguous (" +
                                      std::to_string(prev) + " -> " + std::to_string(cur) + ")");
        }
    }

    bool center_seen = false;
    for (const auto& f : manifest.frames)
        if (f.camera.view_id == manifest.center_view) center_seen = true;
    if (!center_seen)
        throw ValidationError("manifest: center_view " + std::to_string(manifest.center_view) +
                              " has no frames");
    return manifest;
}

}  // namespace stormfield::io
