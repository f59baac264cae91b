#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "stormfield/attn/adapter.hpp"
#include "stormfield/attn/attention.hpp"
#include "stormfield/field/presets.hpp"
#include "stormfield/io/config_json.hpp"
#include "stormfield/io/embedding_io.hpp"
#include "stormfield/io/flow_io.hpp"
#include "stormfield/io/matrix_io.hpp"
#include "stormfield/io/png_io.hpp"
#include "stormfield/io/trajectory.hpp"
#include "stormfield/metrics/metrics.hpp"

#include "support/oracles.hpp"

using namespace stormfield;
namespace fs = std::filesystem;

#ifndef STORMFIELD_BIN_PATH
#error "STORMFIELD_BIN_PATH must point at the CLI binary"
#endif

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("stormfield-cli-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run_cli(const TempDir& tmp, const std::string& args, const std::string& env = "") {
    const fs::path out_file = tmp.path / ".cli-stdout";
    const fs::path err_file = tmp.path / ".cli-stderr";
    const std::string cmd = env + (env.empty() ? "" : " ") + STORMFIELD_BIN_PATH + " " + args +
                            " >" + out_file.string() + " 2>" + err_file.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

std::string file_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// small multi-view scene: two views, `frames` timesteps, center view 1
void write_scene(const TempDir& tmp, int frames, int width = 64, int height = 48) {
    std::mt19937_64 eng(4242);
    std::uniform_real_distribution<float> u(0.f, 1.f);
    nlohmann::json manifest;
    manifest["center_view"] = 1;
    manifest["frames"] = nlohmann::json::array();
    for (int f = 0; f < frames; ++f) {
        for (int v : {1, 2}) {
            splat::FrameBuffer bg(width, height);
            for (auto& val : bg.rgb) val = u(eng) * 0.25f;
            const std::string bg_name =
                "bg_f" + std::to_string(f) + "_v" + std::to_string(v) + ".png";
            io::write_png(tmp.path / bg_name, bg);
            manifest["frames"].push_back(
                {{"frame_index", f},
                 {"view_id", v},
                 {"pose",
                  {1, 0, 0, v * 0.5, 0, 1, 0, 0, 0, 0, 1, 0.4 * f, 0, 0, 0, 1}},
                 {"intrinsics",
                  {{"fx", 70.0},
                   {"fy", 70.0},
                   {"cx", width / 2.0},
                   {"cy", height / 2.0},
                   {"width", width},
                   {"height", height}}},
                 {"background_path", bg_name}});
        }
    }
    std::ofstream out(tmp.path / "scene.json");
    out << manifest.dump(1);
}

void write_config(const TempDir& tmp, const std::string& name, std::uint64_t quantity,
                  double scale = 0.04, double opacity_mean = 0.9) {
    auto config = field::preset(field::WeatherType::Snow, field::SeverityLevel::moderate());
    config.quantity = quantity;
    for (auto& s : config.dists.scale) s = {scale, scale * 0.2};
    config.dists.opacity = {opacity_mean, 0.05};
    std::ofstream out(tmp.path / name);
    out << io::config_to_json(config).dump(1);
}

}  // namespace

TEST_CASE("presets --json lists 9 entries that round-trip through the parser") {
    TempDir tmp;
    const auto r = run_cli(tmp, "presets --json");
    REQUIRE(r.exit_code == 0);
    const auto table = nlohmann::json::parse(r.out);
    REQUIRE(table.size() == 9);
    std::map<std::string, std::vector<std::uint64_t>> quantities;
    for (const auto& row : table) {
        const auto config = io::config_from_json(row.at("config"));
        quantities[row.at("weather").get<std::string>()].push_back(config.quantity);
    }
    for (const auto& [type, q] : quantities) {
        REQUIRE(q.size() == 3);  // listed light, moderate, heavy
        CHECK(q[0] < q[1]);
        CHECK(q[1] < q[2]);
    }
}

TEST_CASE("simulate writes the expected trajectory and records toggles") {
    TempDir tmp;
    write_scene(tmp, 3);
    write_config(tmp, "snow100.json", 100);
    const auto traj_path = tmp.path / "out.sft";
    const auto r = run_cli(tmp, "simulate --manifest " + (tmp.path / "scene.json").string() +
                                    " --config " + (tmp.path / "snow100.json").string() +
                                    " --seed 7 --no-alignment --out " + traj_path.string());
    REQUIRE(r.exit_code == 0);
    const auto traj = io::read_trajectory(traj_path);
    CHECK(traj.header.quantity == 100);
    CHECK(traj.frames.size() == 3);
    for (const auto& f : traj.frames) CHECK(f.size() == 100);
    CHECK_FALSE(traj.header.toggles.alignment);
    CHECK(traj.header.toggles.dynamics);
    CHECK(traj.header.seed == 7);
}

TEST_CASE("identical simulate invocations produce byte-identical files") {
    TempDir tmp;
    write_scene(tmp, 3);
    write_config(tmp, "cfg.json", 60);
    const std::string base = "simulate --manifest " + (tmp.path / "scene.json").string() +
                             " --config " + (tmp.path / "cfg.json").string() + " --seed 99 --out ";
    REQUIRE(run_cli(tmp, base + (tmp.path / "a.sft").string()).exit_code == 0);
    REQUIRE(run_cli(tmp, base + (tmp.path / "b.sft").string()).exit_code == 0);
    CHECK(file_bytes(tmp.path / "a.sft") == file_bytes(tmp.path / "b.sft"));
}

TEST_CASE("render emits one correctly named PNG per (frame, view)") {
    TempDir tmp;
    write_scene(tmp, 2);
    write_config(tmp, "cfg.json", 150);
    const auto traj = (tmp.path / "t.sft").string();
    REQUIRE(run_cli(tmp, "simulate --manifest " + (tmp.path / "scene.json").string() +
                             " --config " + (tmp.path / "cfg.json").string() + " --out " + traj)
                .exit_code == 0);
    const auto out_dir = tmp.path / "frames";
    const auto r = run_cli(tmp, "render --manifest " + (tmp.path / "scene.json").string() +
                                    " --trajectory " + traj + " --out " + out_dir.string());
    REQUIRE(r.exit_code == 0);
    for (int f = 0; f < 2; ++f)
        for (int v : {1, 2}) {
            char name[32];
            std::snprintf(name, sizeof(name), "f%04d_v%d.png", f, v);
            const auto img = io::read_png(out_dir / name);
            CHECK(img.width == 64);
            CHECK(img.height == 48);
        }
    // no stray staging files
    for (const auto& entry : fs::directory_iterator(out_dir))
        CHECK(entry.path().extension() == ".png");
}

TEST_CASE("a heavier field disturbs strictly more background pixels") {
    TempDir tmp;
    write_scene(tmp, 2);
    write_config(tmp, "light.json", 250);
    write_config(tmp, "heavy.json", 2500);

    const auto count_diff = [&](const std::string& config_name, const std::string& dir) {
        REQUIRE(run_cli(tmp, "render --manifest " + (tmp.path / "scene.json").string() +
                                 " --config " + (tmp.path / config_name).string() +
                                 " --seed 5 --out " + (tmp.path / dir).string())
                    .exit_code == 0);
        std::size_t differing = 0;
        for (int f = 0; f < 2; ++f)
            for (int v : {1, 2}) {
                char name[32];
                std::snprintf(name, sizeof(name), "f%04d_v%d.png", f, v);
                const auto img = io::read_png(tmp.path / dir / name);
                const auto bg = io::read_png(
                    tmp.path / ("bg_f" + std::to_string(f) + "_v" + std::to_string(v) + ".png"));
                for (std::size_t i = 0; i < img.rgb.size(); ++i)
                    differing += img.rgb[i] != bg.rgb[i];
            }
        return differing;
    };
    const auto light = count_diff("light.json", "out_light");
    const auto heavy = count_diff("heavy.json", "out_heavy");
    CHECK(light > 0);
    CHECK(heavy > light);
}

TEST_CASE("kernel variant and thread count never change output bytes") {
    TempDir tmp;
    write_scene(tmp, 3);
    write_config(tmp, "cfg.json", 800);
    const std::string manifest = (tmp.path / "scene.json").string();
    const std::string config = (tmp.path / "cfg.json").string();

    const auto run_pipeline = [&](const std::string& tag, const std::string& env) {
        const auto traj = (tmp.path / (tag + ".sft")).string();
        REQUIRE(run_cli(tmp,
                        "simulate --manifest " + manifest + " --config " + config +
                            " --seed 31 --out " + traj,
                        env)
                    .exit_code == 0);
        REQUIRE(run_cli(tmp,
                        "render --manifest " + manifest + " --trajectory " + traj + " --out " +
                            (tmp.path / tag).string(),
                        env)
                    .exit_code == 0);
    };
    run_pipeline("simd_auto", "");
    run_pipeline("simd_scalar", "STORMFIELD_SIMD=scalar");
    run_pipeline("threads_one", "STORMFIELD_THREADS=1");
    run_pipeline("threads_many", "STORMFIELD_THREADS=7");

    CHECK(file_bytes(tmp.path / "simd_auto.sft") == file_bytes(tmp.path / "simd_scalar.sft"));
    for (int f = 0; f < 3; ++f)
        for (int v : {1, 2}) {
            char name[32];
            std::snprintf(name, sizeof(name), "f%04d_v%d.png", f, v);
            const auto reference = file_bytes(tmp.path / "simd_auto" / name);
            CHECK(reference == file_bytes(tmp.path / "simd_scalar" / name));
            CHECK(reference == file_bytes(tmp.path / "threads_one" / name));
            CHECK(reference == file_bytes(tmp.path / "threads_many" / name));
        }
}

TEST_CASE("validation failures exit 2 and leave no partial outputs") {
    TempDir tmp;
    write_scene(tmp, 2);
    write_config(tmp, "cfg.json", 50);

    // break one pose
    auto manifest = nlohmann::json::parse(file_bytes(tmp.path / "scene.json"));
    manifest["frames"][0]["pose"][0] = 2.0;
    {
        std::ofstream out(tmp.path / "broken.json");
        out << manifest.dump();
    }
    const auto traj_path = tmp.path / "should_not_exist.sft";
    const auto r = run_cli(tmp, "simulate --manifest " + (tmp.path / "broken.json").string() +
                                    " --config " + (tmp.path / "cfg.json").string() + " --out " +
                                    traj_path.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("row x") != std::string::npos);
    CHECK_FALSE(fs::exists(traj_path));

    // missing background named in the diagnostic
    fs::remove(tmp.path / "bg_f1_v2.png");
    const auto out_dir = tmp.path / "partial";
    const auto r2 = run_cli(tmp, "render --manifest " + (tmp.path / "scene.json").string() +
                                     " --config " + (tmp.path / "cfg.json").string() + " --out " +
                                     out_dir.string());
    CHECK(r2.exit_code == 2);
    CHECK(r2.err.find("bg_f1_v2.png") != std::string::npos);
    CHECK_FALSE(fs::exists(out_dir));

    // mismatched trajectory length rejected before any file exists
    write_scene(tmp, 2);  // restore
    write_config(tmp, "cfg.json", 50);
    const auto traj3 = (tmp.path / "t3.sft").string();
    TempDir tmp3;
    write_scene(tmp3, 3);
    write_config(tmp3, "cfg.json", 50);
    REQUIRE(run_cli(tmp3, "simulate --manifest " + (tmp3.path / "scene.json").string() +
                              " --config " + (tmp3.path / "cfg.json").string() + " --out " + traj3)
                .exit_code == 0);
    const auto r3 = run_cli(tmp, "render --manifest " + (tmp.path / "scene.json").string() +
                                     " --trajectory " + traj3 + " --out " +
                                     (tmp.path / "mismatch").string());
    CHECK(r3.exit_code == 2);
    CHECK_FALSE(fs::exists(tmp.path / "mismatch"));
}

TEST_CASE("unknown CLI usage exits 2") {
    TempDir tmp;
    CHECK(run_cli(tmp, "frobnicate").exit_code == 2);
    CHECK(run_cli(tmp, "simulate").exit_code == 2);
    CHECK(run_cli(tmp, "--version").exit_code == 0);
}

TEST_CASE("eval warp-error reports zero for identical frames under zero flow") {
    TempDir tmp;
    std::mt19937_64 eng(8);
    std::uniform_real_distribution<float> u(0.f, 1.f);
    splat::FrameBuffer frame(20, 15);
    for (auto& v : frame.rgb) v = u(eng);
    io::write_png(tmp.path / "f0.png", frame);
    io::write_png(tmp.path / "f1.png", frame);

    metrics::FlowField flow;
    flow.width = 20;
    flow.height = 15;
    flow.u.assign(300, 0.f);
    flow.v.assign(300, 0.f);
    flow.valid.assign(300, 1);
    io::write_flow(tmp.path / "z.flow", flow);

    const auto r = run_cli(tmp, "eval warp-error --frames " + (tmp.path / "f0.png").string() +
                                    " " + (tmp.path / "f1.png").string() + " --flows " +
                                    (tmp.path / "z.flow").string());
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    int records = 0;
    while (std::getline(lines, line)) {
        const auto rec = nlohmann::json::parse(line);
        CHECK(rec.at("metric") == "warp_error");
        CHECK(rec.at("value").get<double>() == 0.0);
        ++records;
    }
    CHECK(records == 2);  // one pair + the aggregate
}

TEST_CASE("eval bhattacharyya of a frame against itself is zero") {
    TempDir tmp;
    std::mt19937_64 eng(9);
    std::uniform_real_distribution<float> u(0.f, 1.f);
    splat::FrameBuffer frame(24, 24);
    for (auto& v : frame.rgb) v = u(eng);
    io::write_png(tmp.path / "img.png", frame);
    const auto r = run_cli(tmp, "eval bhattacharyya --images-a " +
                                    (tmp.path / "img.png").string() + " --images-b " +
                                    (tmp.path / "img.png").string());
    REQUIRE(r.exit_code == 0);
    const auto first = nlohmann::json::parse(r.out.substr(0, r.out.find('\n')));
    CHECK(first.at("value").get<double>() == 0.0);

    // crop flag accepted and applied
    const auto rc = run_cli(tmp, "eval bhattacharyya --images-a " +
                                     (tmp.path / "img.png").string() + " --images-b " +
                                     (tmp.path / "img.png").string() + " --crop 2 2 10 10");
    CHECK(rc.exit_code == 0);
}

TEST_CASE("eval clip metrics agree with the library oracles") {
    TempDir tmp;
    io::write_embeddings(tmp.path / "ea.txt", {{0.6, 0.8}});
    io::write_embeddings(tmp.path / "eb.txt", {{1.0, 0.0}});
    auto r = run_cli(tmp, "eval clip-s --embeds-a " + (tmp.path / "ea.txt").string() +
                              " --embeds-b " + (tmp.path / "eb.txt").string());
    REQUIRE(r.exit_code == 0);
    auto rec = nlohmann::json::parse(r.out.substr(0, r.out.find('\n')));
    CHECK(rec.at("value").get<double>() == doctest::Approx(0.6).epsilon(1e-9));

    const double s = std::sqrt(0.5);
    io::write_embeddings(tmp.path / "is.txt", {{-s, s}});
    io::write_embeddings(tmp.path / "ie.txt", {{s, s}});
    io::write_embeddings(tmp.path / "ts.txt", {{0.0, -1.0}});
    io::write_embeddings(tmp.path / "tt.txt", {{1.0, 0.0}});
    r = run_cli(tmp, "eval clip-ds --img-src " + (tmp.path / "is.txt").string() +
                         " --img-edit " + (tmp.path / "ie.txt").string() + " --txt-src " +
                         (tmp.path / "ts.txt").string() + " --txt-target " +
                         (tmp.path / "tt.txt").string());
    REQUIRE(r.exit_code == 0);
    rec = nlohmann::json::parse(r.out.substr(0, r.out.find('\n')));
    CHECK(rec.at("value").get<double>() == doctest::Approx(0.7071067811865475).epsilon(1e-9));

    // degenerate input: failure record, exit 2
    r = run_cli(tmp, "eval clip-ds --img-src " + (tmp.path / "is.txt").string() +
                         " --img-edit " + (tmp.path / "is.txt").string() + " --txt-src " +
                         (tmp.path / "ts.txt").string() + " --txt-target " +
                         (tmp.path / "tt.txt").string());
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("error") != std::string::npos);
}

TEST_CASE("kernels subcommands match the library on matrix files") {
    TempDir tmp;
    std::mt19937_64 eng(10);
    const Mat q = oracles::random_mat(eng, 4, 3);
    const Mat k = oracles::random_mat(eng, 5, 3);
    const Mat v = oracles::random_mat(eng, 5, 3);
    io::write_matrix(tmp.path / "q.txt", q);
    io::write_matrix(tmp.path / "k.txt", k);
    io::write_matrix(tmp.path / "v.txt", v);
    auto r = run_cli(tmp, "kernels attention --q " + (tmp.path / "q.txt").string() + " --k " +
                              (tmp.path / "k.txt").string() + " --v " +
                              (tmp.path / "v.txt").string() + " --out " +
                              (tmp.path / "out.txt").string());
    REQUIRE(r.exit_code == 0);
    const Mat out = io::read_matrix(tmp.path / "out.txt");
    const Mat want = attn::scaled_dot_attention(q, k, v);
    for (std::size_t i = 0; i < out.rows() * out.cols(); ++i)
        REQUIRE(out.data()[i] == doctest::Approx(want.data()[i]).epsilon(1e-12));

    // tv-attn through a batch file
    const std::size_t d = 3, n = 4;
    nlohmann::json batch_json;
    batch_json["center_view"] = 1;
    batch_json["lambda"] = 0.25;
    batch_json["wq"] = "wq.txt";
    batch_json["wk"] = "wk.txt";
    batch_json["wv"] = "wv.txt";
    io::write_matrix(tmp.path / "wq.txt", oracles::random_mat(eng, d, d));
    io::write_matrix(tmp.path / "wk.txt", oracles::random_mat(eng, d, d));
    io::write_matrix(tmp.path / "wv.txt", oracles::random_mat(eng, d, d));
    batch_json["grids"] = nlohmann::json::array();
    for (int f = 0; f < 2; ++f)
        for (int view : {1, 2}) {
            const std::string name = "g" + std::to_string(f) + std::to_string(view) + ".txt";
            io::write_matrix(tmp.path / name, oracles::random_mat(eng, n, d));
            batch_json["grids"].push_back({{"frame", f}, {"view", view}, {"tokens", name}});
        }
    {
        std::ofstream out_file(tmp.path / "batch.json");
        out_file << batch_json.dump();
    }
    r = run_cli(tmp, "kernels tv-attn --batch " + (tmp.path / "batch.json").string() +
                         " --frame 0 --view 2 --out " + (tmp.path / "tv.txt").string());
    REQUIRE(r.exit_code == 0);

    attn::AttentionBatch batch(1, 0.25, io::read_matrix(tmp.path / "wq.txt"),
                               io::read_matrix(tmp.path / "wk.txt"),
                               io::read_matrix(tmp.path / "wv.txt"));
    for (int f = 0; f < 2; ++f)
        for (int view : {1, 2})
            batch.add_grid(f, view,
                           io::read_matrix(tmp.path / ("g" + std::to_string(f) +
                                                       std::to_string(view) + ".txt")));
    const Mat tv_want = attn::tv_attn(batch, 0, 2);
    const Mat tv_got = io::read_matrix(tmp.path / "tv.txt");
    for (std::size_t i = 0; i < tv_want.rows() * tv_want.cols(); ++i)
        REQUIRE(tv_got.data()[i] == doctest::Approx(tv_want.data()[i]).epsilon(1e-12));

    // adapter
    const Mat base = oracles::random_mat(eng, 4, 4);
    const Mat fa = oracles::random_mat(eng, 4, 2);
    const Mat fb = oracles::random_mat(eng, 2, 4);
    const Mat x = oracles::random_mat(eng, 4, 1);
    io::write_matrix(tmp.path / "w0.txt", base);
    io::write_matrix(tmp.path / "A.txt", fa);
    io::write_matrix(tmp.path / "B.txt", fb);
    io::write_matrix(tmp.path / "x.txt", x);
    r = run_cli(tmp, "kernels adapter --base " + (tmp.path / "w0.txt").string() + " --style snow=" +
                         (tmp.path / "A.txt").string() + "," + (tmp.path / "B.txt").string() +
                         " --apply snow --input " + (tmp.path / "x.txt").string() + " --out " +
                         (tmp.path / "h.txt").string());
    REQUIRE(r.exit_code == 0);
    attn::AdapterStack stack(base, 2);
    stack.register_style("snow", fa, fb);
    const Mat h_want = stack.forward("snow", x);
    const Mat h_got = io::read_matrix(tmp.path / "h.txt");
    for (std::size_t i = 0; i < h_want.rows(); ++i)
        REQUIRE(h_got(i, 0) == doctest::Approx(h_want(i, 0)).epsilon(1e-12));

    // unknown style id fails cleanly
    r = run_cli(tmp, "kernels adapter --base " + (tmp.path / "w0.txt").string() + " --style snow=" +
                         (tmp.path / "A.txt").string() + "," + (tmp.path / "B.txt").string() +
                         " --apply rain --input " + (tmp.path / "x.txt").string());
    CHECK(r.exit_code == 2);
}
