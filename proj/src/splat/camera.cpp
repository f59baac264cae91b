#include "stormfield/splat/camera.hpp"

#include <cmath>
#include <string>

namespace stormfield::splat {

void CameraFrame::validate() const {
    const std::string where =
        "camera (frame " + std::to_string(frame_index) + ", view " + std::to_string(view_id) + "): ";
    for (double v : rotation.m)
        if (!std::isfinite(v)) throw ValidationError(where + "non-finite pose rotation");
    if (!translation.finite()) throw ValidationError(where + "non-finite pose translation");
    const std::string diag = rotation_diagnostics(rotation, RigidTransform::kOrthoTol);
    if (!diag.empty()) throw ValidationError(where + "pose rotation not SO(3):" + diag);
    if (width < 1 || height < 1) throw ValidationError(where + "image dimensions must be positive");
    if (!(fx > 0.0) || !(fy > 0.0) || !std::isfinite(fx) || !std::isfinite(fy))
        throw ValidationError(where + "focal lengths must be positive");
    if (!(cx >= 0.0 && cx < width) || !(cy >= 0.0 && cy < height))
        throw ValidationError(where + "principal point outside the image");
}

}  // namespace stormfield::splat
