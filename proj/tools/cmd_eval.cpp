#include <cstdio>
#include <fstream>
#include <map>

#include <json.hpp>

#include "stormfield/io/embedding_io.hpp"
#include "stormfield/io/flow_io.hpp"
#include "stormfield/io/png_io.hpp"
#include "stormfield/metrics/metrics.hpp"

#include "common.hpp"

namespace stormfield::cli {

namespace {

using nlohmann::json;

// JSON-lines metric report; aggregates per-metric means at the end.
class Report {
public:
    explicit Report(const std::string& out_path) {
        if (!out_path.empty()) {
            file_.open(out_path);
            if (!file_) throw IoError("cannot open report file '" + out_path + "'");
        }
    }

    void record(const std::string& metric, double value, json inputs) {
        emit({{"metric", metric}, {"value", value}, {"inputs", std::move(inputs)}});
        auto& [sum, count] = agg_[metric];
        sum += value;
        ++count;
    }

    void failure(const std::string& metric, const std::string& error, json inputs) {
        emit({{"metric", metric}, {"error", error}, {"inputs", std::move(inputs)}});
        failed_ = true;
    }

    int finish() {
        for (const auto& [metric, entry] : agg_) {
            const auto& [sum, count] = entry;
            emit({{"metric", metric},
                  {"value", sum / count},
                  {"inputs", {{"aggregate", "mean"}, {"count", count}}}});
        }
        return failed_ ? kExitValidation : kExitOk;
    }

private:
    void emit(const json& rec) {
        const std::string line = rec.dump();
        if (file_.is_open())
            file_ << line << '\n';
        else
            std::printf("%s\n", line.c_str());
    }

    std::ofstream file_;
    std::map<std::string, std::pair<double, int>> agg_;
    bool failed_ = false;
};

}  // namespace

int run_eval_warp(const EvalWarpArgs& args, const std::string& out_path) {
    if (args.frames.size() < 2)
        throw ValidationError("eval warp-error: need at least two --frames");
    if (args.flows.size() != args.frames.size() - 1)
        throw ValidationError("eval warp-error: need one --flows entry per consecutive frame pair");

    Report report(out_path);
    for (std::size_t i = 0; i + 1 < args.frames.size(); ++i) {
        const json inputs{{"frame_t", args.frames[i]},
                          {"frame_t1", args.frames[i + 1]},
                          {"flow", args.flows[i]}};
        try {
            const auto a = io::read_png(args.frames[i]);
            const auto b = io::read_png(args.frames[i + 1]);
            const auto flow = io::read_flow(args.flows[i]);
            report.record("warp_error", metrics::warp_error(a, b, flow), inputs);
        } catch (const std::exception& e) {
            report.failure("warp_error", e.what(), inputs);
        }
    }
    return report.finish();
}

int run_eval_bhattacharyya(const EvalBhattacharyyaArgs& args, const std::string& out_path) {
    if (args.images_a.empty() || args.images_a.size() != args.images_b.size())
        throw ValidationError("eval bhattacharyya: --images-a and --images-b must pair up");
    if (!args.crop.empty() && args.crop.size() != 4)
        throw ValidationError("eval bhattacharyya: --crop takes x y w h");
    if (args.bins < 2) throw ValidationError("eval bhattacharyya: --bins must be >= 2");

    Report report(out_path);
    for (std::size_t i = 0; i < args.images_a.size(); ++i) {
        json inputs{{"image_a", args.images_a[i]}, {"image_b", args.images_b[i]}};
        if (!args.crop.empty()) inputs["crop"] = args.crop;
        try {
            splat::FrameBuffer a = io::read_png(args.images_a[i]);
            splat::FrameBuffer b = io::read_png(args.images_b[i]);
            if (!args.crop.empty()) {
                a = splat::crop(a, args.crop[0], args.crop[1], args.crop[2], args.crop[3]);
                b = splat::crop(b, args.crop[0], args.crop[1], args.crop[2], args.crop[3]);
            }
            const double d = metrics::bhattacharyya_distance(metrics::histogram_of(a, args.bins),
                                                             metrics::histogram_of(b, args.bins));
            report.record("bhattacharyya", d, inputs);
        } catch (const std::exception& e) {
            report.failure("bhattacharyya", e.what(), inputs);
        }
    }
    return report.finish();
}

namespace {

// zips two embedding lists; a singleton broadcasts against the other list
std::size_t paired_count(std::size_t a, std::size_t b, const char* what) {
    if (a == b) return a;
    if (a == 1) return b;
    if (b == 1) return a;
    throw ValidationError(std::string(what) + ": vector counts disagree and neither is singular");
}

const metrics::EmbeddingVec& pick(const std::vector<metrics::EmbeddingVec>& v, std::size_t i) {
    return v.size() == 1 ? v.front() : v[i];
}

}  // namespace

int run_eval_clip_s(const EvalClipSArgs& args, const std::string& out_path) {
    Report report(out_path);
    const auto a = io::read_embeddings(args.embeds_a);
    const auto b = io::read_embeddings(args.embeds_b);
    const std::size_t n = paired_count(a.size(), b.size(), "eval clip-s");
    for (std::size_t i = 0; i < n; ++i) {
        const json inputs{{"embed_a", args.embeds_a},
                          {"embed_b", args.embeds_b},
                          {"row", i}};
        try {
            report.record("clip_s", metrics::clip_s(pick(a, i), pick(b, i)), inputs);
        } catch (const std::exception& e) {
            report.failure("clip_s", e.what(), inputs);
        }
    }
    return report.finish();
}

int run_eval_clip_ds(const EvalClipDsArgs& args, const std::string& out_path) {
    Report report(out_path);
    const auto img_src = io::read_embeddings(args.img_src);
    const auto img_edit = io::read_embeddings(args.img_edit);
    const auto txt_src = io::read_embeddings(args.txt_src);
    const auto txt_target = io::read_embeddings(args.txt_target);
    std::size_t n = paired_count(img_src.size(), img_edit.size(), "eval clip-ds");
    n = paired_count(n, paired_count(txt_src.size(), txt_target.size(), "eval clip-ds"),
                     "eval clip-ds");
    for (std::size_t i = 0; i < n; ++i) {
        const json inputs{{"img_src", args.img_src},
                          {"img_edit", args.img_edit},
                          {"txt_src", args.txt_src},
                          {"txt_target", args.txt_target},
                          {"row", i}};
        try {
            report.record("clip_ds",
                          metrics::clip_ds(pick(img_src, i), pick(img_edit, i), pick(txt_src, i),
                                           pick(txt_target, i)),
                          inputs);
        } catch (const std::exception& e) {
            report.failure("clip_ds", e.what(), inputs);
        }
    }
    return report.finish();
}

}  // namespace stormfield::cli
