#pragma once

#include <filesystem>
#include <vector>

#include "stormfield/metrics/metrics.hpp"

namespace stormfield::io {

// Embedding text files: first line is the dimension d, then one vector per
// line as d space-separated decimals. Vectors are unit-normalized on load.
std::vector<metrics::EmbeddingVec> read_embeddings(const std::filesystem::path& path);
void write_embeddings(const std::filesystem::path& path,
                      const std::vector<std::vector<double>>& raw);

}  // namespace stormfield::io
