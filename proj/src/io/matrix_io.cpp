#include "stormfield/io/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>

namespace stormfield::io {

Mat read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open matrix file '" + path.string() + "'");
    long long rows = 0, cols = 0;
    if (!(in >> rows >> cols) || rows < 1 || cols < 1)
        throw ValidationError("matrix file '" + path.string() + "': bad 'rows cols' header");
    Mat m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (std::size_t i = 0; i < m.rows() * m.cols(); ++i) {
        if (!(in >> m.data()[i]))
            throw ValidationError("matrix file '" + path.string() + "': expected " +
                                  std::to_string(rows * cols) + " values");
    }
    double extra;
    if (in >> extra)
        throw ValidationError("matrix file '" + path.string() + "': trailing values");
    return m;
}

void write_matrix(const std::filesystem::path& path, const Mat& m) {
    if (m.rows() < 1 || m.cols() < 1) throw ValidationError("matrix write: empty matrix");
    std::ofstream out(path);
    if (!out) throw IoError("cannot open matrix file '" + path.string() + "' for writing");
    out << m.rows() << ' ' << m.cols() << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out << ' ';
            out << m(r, c);
        }
        out << '\n';
    }
    if (!out) throw IoError("failed writing matrix file '" + path.string() + "'");
}

}  // namespace stormfield::io
