#include "stormfield/io/flow_io.hpp"

#include <fstream>

#include <json.hpp>

#include "bytes.hpp"

namespace stormfield::io {

metrics::FlowField read_flow(const std::filesystem::path& path) {
    const std::filesystem::path sidecar = path.string() + ".json";
    std::ifstream meta(sidecar);
    if (!meta) throw IoError("cannot open flow sidecar '" + sidecar.string() + "'");
    nlohmann::json j;
    try {
        meta >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("flow sidecar '" + sidecar.string() + "': " + e.what());
    }
    if (!j.is_object() || !j.contains("width") || !j.contains("height"))
        throw ValidationError("flow sidecar '" + sidecar.string() +
                              "' must provide width and height");
    const int w = j.at("width").get<int>();
    const int h = j.at("height").get<int>();
    if (w < 1 || h < 1)
        throw ValidationError("flow sidecar '" + sidecar.string() + "': bad dimensions");

    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open flow file '" + path.string() + "'");

    metrics::FlowField f;
    f.width = w;
    f.height = h;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    f.u.resize(n);
    f.v.resize(n);
    f.valid.resize(n);
    for (auto* plane : {&f.u, &f.v})
        for (float& val : *plane)
            if (!detail::read_f32le(in, val))
                throw ValidationError("flow file '" + path.string() + "' is truncated");
    if (!in.read(reinterpret_cast<char*>(f.valid.data()), static_cast<std::streamsize>(n)))
        throw ValidationError("flow file '" + path.string() + "' is truncated");
    char extra;
    if (in.read(&extra, 1))
        throw ValidationError("flow file '" + path.string() + "' has trailing bytes");
    return f;
}

void write_flow(const std::filesystem::path& path, const metrics::FlowField& flow) {
    const std::size_t n = static_cast<std::size_t>(flow.width) * flow.height;
    if (flow.width < 1 || flow.height < 1 || flow.u.size() != n || flow.v.size() != n ||
        flow.valid.size() != n)
        throw ValidationError("flow write: malformed flow field");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open flow file '" + path.string() + "' for writing");
    for (const auto* plane : {&flow.u, &flow.v})
        for (float val : *plane) detail::write_f32le(out, val);
    out.write(reinterpret_cast<const char*>(flow.valid.data()), static_cast<std::streamsize>(n));
    if (!out) throw IoError("failed writing flow file '" + path.string() + "'");
    out.close();

    nlohmann::json j{{"width", flow.width}, {"height", flow.height}};
    std::ofstream meta(path.string() + ".json");
    if (!meta) throw IoError("cannot write flow sidecar for '" + path.string() + "'");
    meta << j.dump(2) << '\n';
}

}  // namespace stormfield::io
