#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "stormfield/attn/adapter.hpp"
#include "stormfield/attn/attention.hpp"
#include "stormfield/io/matrix_io.hpp"

#include "common.hpp"

namespace stormfield::cli {

namespace {

void emit_matrix(const Mat& m, const std::string& out_path) {
    if (!out_path.empty()) {
        io::write_matrix(out_path, m);
        return;
    }
    std::printf("%zu %zu\n", m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            std::printf(c ? " %.17g" : "%.17g", m(r, c));
        std::printf("\n");
    }
}

}  // namespace

int run_kernel_attention(const KernelAttentionArgs& args) {
    const Mat q = io::read_matrix(args.q_path);
    const Mat k = io::read_matrix(args.k_path);
    const Mat v = io::read_matrix(args.v_path);
    emit_matrix(attn::scaled_dot_attention(q, k, v), args.out_path);
    return kExitOk;
}

int run_kernel_tv(const KernelTvArgs& args) {
    std::ifstream in(args.batch_path);
    if (!in) throw IoError("cannot open batch file '" + args.batch_path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("batch file '" + args.batch_path + "': " + e.what());
    }

    const std::filesystem::path base = std::filesystem::path(args.batch_path).parent_path();
    try {
        double lambda = j.value("lambda", 0.5);
        if (args.lambda_set) lambda = args.lambda;
        attn::AttentionBatch batch(j.at("center_view").get<int>(), lambda,
                                   io::read_matrix(base / j.at("wq").get<std::string>()),
                                   io::read_matrix(base / j.at("wk").get<std::string>()),
                                   io::read_matrix(base / j.at("wv").get<std::string>()));
        for (const auto& g : j.at("grids")) {
            batch.add_grid(g.at("frame").get<int>(), g.at("view").get<int>(),
                           io::read_matrix(base / g.at("tokens").get<std::string>()));
        }
        batch.validate();
        emit_matrix(attn::tv_attn(batch, args.frame, args.view), args.out_path);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("batch file '" + args.batch_path + "': " + e.what());
    }
    return kExitOk;
}

int run_kernel_adapter(const KernelAdapterArgs& args) {
    if (args.styles.empty())
        throw ValidationError("kernels adapter: at least one --style id=A.txt,B.txt is required");

    struct ParsedStyle {
        std::string id;
        Mat a, b;
    };
    std::vector<ParsedStyle> parsed;
    for (const std::string& spec : args.styles) {
        const auto eq = spec.find('=');
        const auto comma = spec.find(',', eq == std::string::npos ? 0 : eq);
        if (eq == std::string::npos || comma == std::string::npos || eq == 0)
            throw ValidationError("kernels adapter: style spec must be id=A.txt,B.txt (got '" +
                                  spec + "')");
        parsed.push_back({spec.substr(0, eq),
                          io::read_matrix(spec.substr(eq + 1, comma - eq - 1)),
                          io::read_matrix(spec.substr(comma + 1))});
    }

    attn::AdapterStack stack(io::read_matrix(args.base_path), parsed.front().a.cols());
    for (auto& s : parsed) stack.register_style(s.id, std::move(s.a), std::move(s.b));

    emit_matrix(stack.forward(args.apply, io::read_matrix(args.input_path)), args.out_path);
    return kExitOk;
}

}  // namespace stormfield::cli
