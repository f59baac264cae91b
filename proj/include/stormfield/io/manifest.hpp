#pragma once

#include <filesystem>
#include <vector>

#include "stormfield/splat/camera.hpp"

namespace stormfield::io {

struct ManifestFrame {
    splat::CameraFrame camera;
    std::filesystem::path background_path;  // resolved against the manifest dir
};

// Multi-view scene description: per (frame, view) pose + intrinsics +
// background image, plus the center view id. Poses are camera-to-world,
// row-major 16 reals.
struct SceneManifest {
    std::vector<ManifestFrame> frames;
    int center_view = 0;

    // sorted unique frame indices
    std::vector<int> frame_indices() const;
    std::vector<int> view_ids() const;
    // frames of one view ordered by frame_index
    std::vector<const ManifestFrame*> view_sequence(int view_id) const;
    const ManifestFrame* find(int frame_index, int view_id) const;
};

// Loads and fully validates: SE(3) poses (axis-specific diagnostics),
// contiguous frame indices per view, center view present, background files
// exist, no (frame, view) duplicates.
SceneManifest load_manifest(const std::filesystem::path& path);

}  // namespace stormfield::io
