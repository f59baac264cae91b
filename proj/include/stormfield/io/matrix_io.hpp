#pragma once

#include <filesystem>

#include "stormfield/mat.hpp"

namespace stormfield::io {

// Plain-text matrices: one "rows cols" header line, then whitespace-delimited
// values row by row.
Mat read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const Mat& m);

}  // namespace stormfield::io
