#pragma once

#include <string>
#include <vector>

#include "stormfield/dynamics/dynamics.hpp"
#include "stormfield/field/presets.hpp"
#include "stormfield/io/manifest.hpp"

namespace stormfield::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

inline constexpr double kDefaultDt = 0.1;  // seconds per frame

// Either a config file or a (weather, severity) preset pick.
struct FieldSource {
    std::string config_path;
    std::string weather;
    std::string severity = "moderate";

    field::WeatherFieldConfig resolve() const;
};

struct ToggleFlags {
    bool no_alignment = false;
    bool no_dynamics = false;
    bool no_attributes = false;

    dyn::SimToggles toggles() const {
        return {!no_alignment, !no_dynamics, !no_attributes};
    }
};

// Center-view camera sequence ordered by frame index; every frame index in
// the manifest must have a center-view pose (it drives field alignment).
std::vector<splat::CameraFrame> center_trajectory(const io::SceneManifest& manifest);

int run_simulate(const std::string& manifest_path, const FieldSource& source,
                 std::uint64_t seed, double dt, const ToggleFlags& toggles,
                 const std::string& out_path);

int run_render(const std::string& manifest_path, const std::string& trajectory_path,
               const FieldSource& source, bool inline_simulate, std::uint64_t seed, double dt,
               const ToggleFlags& toggles, const std::string& out_dir);

int run_presets(bool as_json);

struct EvalWarpArgs {
    std::vector<std::string> frames;
    std::vector<std::string> flows;
};
struct EvalBhattacharyyaArgs {
    std::vector<std::string> images_a;
    std::vector<std::string> images_b;
    unsigned bins = 256;
    std::vector<int> crop;  // empty or x,y,w,h
};
struct EvalClipSArgs {
    std::string embeds_a;
    std::string embeds_b;
};
struct EvalClipDsArgs {
    std::string img_src, img_edit, txt_src, txt_target;
};

int run_eval_warp(const EvalWarpArgs& args, const std::string& out_path);
int run_eval_bhattacharyya(const EvalBhattacharyyaArgs& args, const std::string& out_path);
int run_eval_clip_s(const EvalClipSArgs& args, const std::string& out_path);
int run_eval_clip_ds(const EvalClipDsArgs& args, const std::string& out_path);

struct KernelAttentionArgs {
    std::string q_path, k_path, v_path, out_path;
};
struct KernelTvArgs {
    std::string batch_path;
    int frame = 0;
    int view = 0;
    double lambda = 0.5;
    bool lambda_set = false;
    std::string out_path;
};
struct KernelAdapterArgs {
    std::string base_path;
    std::vector<std::string> styles;  // id=Apath,Bpath
    std::string apply;
    std::string input_path;
    std::string out_path;
};

int run_kernel_attention(const KernelAttentionArgs& args);
int run_kernel_tv(const KernelTvArgs& args);
int run_kernel_adapter(const KernelAdapterArgs& args);

}  // namespace stormfield::cli
