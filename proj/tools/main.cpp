#include <cstdio>

#include <CLI11.hpp>

#include "stormfield/error.hpp"

#include "common.hpp"

namespace cli = stormfield::cli;

namespace {

void add_field_source(CLI::App* app, cli::FieldSource& source) {
    app->add_option("--config", source.config_path,
                    "weather field config JSON (alternative to --weather)");
    app->add_option("--weather", source.weather, "preset weather type: snow|rain|fog");
    app->add_option("--severity", source.severity,
                    "preset severity: light|moderate|heavy or a positive multiplier");
}

void add_toggles(CLI::App* app, cli::ToggleFlags& flags) {
    app->add_flag("--no-alignment", flags.no_alignment, "disable local field alignment");
    app->add_flag("--no-dynamics", flags.no_dynamics, "freeze particle motion and recycling");
    app->add_flag("--no-attributes", flags.no_attributes,
                  "replace type attributes with random ones");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stormfield - deterministic weather particle fields, splat rendering, and "
                 "consistency metrics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "stormfield 1.0.0");

    // simulate
    auto* sim = app.add_subcommand("simulate", "simulate a particle trajectory over a scene");
    std::string sim_manifest, sim_out;
    cli::FieldSource sim_source;
    cli::ToggleFlags sim_toggles;
    std::uint64_t sim_seed = 0;
    double sim_dt = cli::kDefaultDt;
    sim->add_option("--manifest", sim_manifest, "scene manifest JSON")->required();
    add_field_source(sim, sim_source);
    sim->add_option("--seed", sim_seed, "sampling seed");
    sim->add_option("--dt", sim_dt, "timestep in seconds (default 0.1)");
    add_toggles(sim, sim_toggles);
    sim->add_option("--out", sim_out, "output trajectory file")->required();

    // render
    auto* ren = app.add_subcommand("render", "composite particles over background frames");
    std::string ren_manifest, ren_trajectory, ren_out;
    cli::FieldSource ren_source;
    cli::ToggleFlags ren_toggles;
    std::uint64_t ren_seed = 0;
    double ren_dt = cli::kDefaultDt;
    ren->add_option("--manifest", ren_manifest, "scene manifest JSON")->required();
    ren->add_option("--trajectory", ren_trajectory, "trajectory file from `simulate`");
    add_field_source(ren, ren_source);
    ren->add_option("--seed", ren_seed, "sampling seed (inline simulate)");
    ren->add_option("--dt", ren_dt, "timestep in seconds (inline simulate)");
    add_toggles(ren, ren_toggles);
    ren->add_option("--out", ren_out, "output directory for PNG frames")->required();

    // eval
    auto* eval = app.add_subcommand("eval", "consistency and alignment metrics");
    eval->require_subcommand(1);
    std::string eval_out;
    eval->add_option("--out", eval_out, "write JSON-lines report here instead of stdout");

    auto* warp = eval->add_subcommand("warp-error", "photometric error under backward warping");
    cli::EvalWarpArgs warp_args;
    warp->add_option("--frames", warp_args.frames, "frame PNGs in time order")->required();
    warp->add_option("--flows", warp_args.flows, "flow files, one per consecutive pair")
        ->required();

    auto* bhat = eval->add_subcommand("bhattacharyya", "color distribution distance");
    cli::EvalBhattacharyyaArgs bhat_args;
    bhat->add_option("--images-a", bhat_args.images_a, "first image of each pair")->required();
    bhat->add_option("--images-b", bhat_args.images_b, "second image of each pair")->required();
    bhat->add_option("--bins", bhat_args.bins, "histogram bins (default 256)");
    bhat->add_option("--crop", bhat_args.crop, "x y w h rectangle applied to both images")
        ->expected(4);

    auto* clip_s = eval->add_subcommand("clip-s", "cosine similarity of embeddings");
    cli::EvalClipSArgs clip_s_args;
    clip_s->add_option("--embeds-a", clip_s_args.embeds_a, "embedding file A")->required();
    clip_s->add_option("--embeds-b", clip_s_args.embeds_b, "embedding file B")->required();

    auto* clip_ds = eval->add_subcommand("clip-ds", "directional similarity of edit vs text");
    cli::EvalClipDsArgs clip_ds_args;
    clip_ds->add_option("--img-src", clip_ds_args.img_src, "source image embeddings")->required();
    clip_ds->add_option("--img-edit", clip_ds_args.img_edit, "edited image embeddings")
        ->required();
    clip_ds->add_option("--txt-src", clip_ds_args.txt_src, "source text embedding")->required();
    clip_ds->add_option("--txt-target", clip_ds_args.txt_target, "target text embedding")
        ->required();

    // presets
    auto* presets = app.add_subcommand("presets", "print the 9-entry preset table");
    bool presets_json = false;
    presets->add_flag("--json", presets_json, "machine-readable output");

    // kernels
    auto* kernels = app.add_subcommand("kernels", "run the numerical kernels on matrix files");
    kernels->require_subcommand(1);

    auto* attention = kernels->add_subcommand("attention", "softmax(Q K^T / sqrt(d)) V");
    cli::KernelAttentionArgs attn_args;
    attention->add_option("--q", attn_args.q_path, "query matrix")->required();
    attention->add_option("--k", attn_args.k_path, "key matrix")->required();
    attention->add_option("--v", attn_args.v_path, "value matrix")->required();
    attention->add_option("--out", attn_args.out_path, "output matrix file (default stdout)");

    auto* tv = kernels->add_subcommand("tv-attn", "blended self/view/temporal attention");
    cli::KernelTvArgs tv_args;
    tv->add_option("--batch", tv_args.batch_path, "batch description JSON")->required();
    tv->add_option("--frame", tv_args.frame, "frame index")->required();
    tv->add_option("--view", tv_args.view, "view id")->required();
    auto* lambda_opt = tv->add_option("--lambda", tv_args.lambda, "blend weight in [0,1]");
    tv->add_option("--out", tv_args.out_path, "output matrix file (default stdout)");

    auto* adapter = kernels->add_subcommand("adapter", "base + low-rank style forward pass");
    cli::KernelAdapterArgs adapter_args;
    adapter->add_option("--base", adapter_args.base_path, "base weight matrix W0")->required();
    adapter->add_option("--style", adapter_args.styles, "style as id=A.txt,B.txt (repeatable)")
        ->required();
    adapter->add_option("--apply", adapter_args.apply, "style id to apply")->required();
    adapter->add_option("--input", adapter_args.input_path, "input matrix (d_in x m)")->required();
    adapter->add_option("--out", adapter_args.out_path, "output matrix file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kExitOk : cli::kExitValidation;
    }

    try {
        if (sim->parsed()) {
            return cli::run_simulate(sim_manifest, sim_source, sim_seed, sim_dt, sim_toggles,
                                     sim_out);
        }
        if (ren->parsed()) {
            const bool inline_sim = !ren_source.config_path.empty() || !ren_source.weather.empty();
            return cli::run_render(ren_manifest, ren_trajectory, ren_source, inline_sim, ren_seed,
                                   ren_dt, ren_toggles, ren_out);
        }
        if (eval->parsed()) {
            if (warp->parsed()) return cli::run_eval_warp(warp_args, eval_out);
            if (bhat->parsed()) return cli::run_eval_bhattacharyya(bhat_args, eval_out);
            if (clip_s->parsed()) return cli::run_eval_clip_s(clip_s_args, eval_out);
            if (clip_ds->parsed()) return cli::run_eval_clip_ds(clip_ds_args, eval_out);
        }
        if (presets->parsed()) return cli::run_presets(presets_json);
        if (kernels->parsed()) {
            if (attention->parsed()) return cli::run_kernel_attention(attn_args);
            if (tv->parsed()) {
                tv_args.lambda_set = lambda_opt->count() > 0;
                return cli::run_kernel_tv(tv_args);
            }
            if (adapter->parsed()) return cli::run_kernel_adapter(adapter_args);
        }
    } catch (const stormfield::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return cli::kExitValidation;
    } catch (const stormfield::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return cli::kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return cli::kExitIo;
    }
    return cli::kExitValidation;
}
