#include "stormfield/io/embedding_io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace stormfield::io {

std::vector<metrics::EmbeddingVec> read_embeddings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open embedding file '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("embedding file '" + path.string() + "' is empty");
    long long dim = 0;
    {
        std::istringstream head(line);
        if (!(head >> dim) || dim < 1)
            throw ValidationError("embedding file '" + path.string() +
                                  "': first line must be the dimension");
        std::string extra;
        if (head >> extra)
            throw ValidationError("embedding file '" + path.string() + "': bad header line");
    }

    std::vector<metrics::EmbeddingVec> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        std::vector<double> values(static_cast<std::size_t>(dim));
        for (double& v : values) {
            if (!(row >> v))
                throw ValidationError("embedding file '" + path.string() + "' line " +
                                      std::to_string(line_no) + ": expected " +
                                      std::to_string(dim) + " values");
        }
        double extra;
        if (row >> extra)
            throw ValidationError("embedding file '" + path.string() + "' line " +
                                  std::to_string(line_no) + ": trailing values");
        out.emplace_back(std::move(values));
    }
    if (out.empty())
        throw ValidationError("embedding file '" + path.string() + "' holds no vectors");
    return out;
}

void write_embeddings(const std::filesystem::path& path,
                      const std::vector<std::vector<double>>& raw) {
    if (raw.empty() || raw.front().empty())
        throw ValidationError("embedding write: nothing to write");
    const std::size_t dim = raw.front().size();
    std::ofstream out(path);
    if (!out) throw IoError("cannot open embedding file '" + path.string() + "' for writing");
    out << dim << '\n' << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& vec : raw) {
        if (vec.size() != dim)
            throw ValidationError("embedding write: inconsistent vector dimensions");
        for (std::size_t i = 0; i < dim; ++i) {
            if (i) out << ' ';
            out << vec[i];
        }
        out << '\n';
    }
    if (!out) throw IoError("failed writing embedding file '" + path.string() + "'");
}

}  // namespace stormfield::io
