#pragma once

#include <cstddef>
#include <vector>

#include "stormfield/error.hpp"

namespace stormfield {

// Dense row-major double matrix; just enough for the numerical kernels.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), v_(rows * cols, 0.0) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return v_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }

    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    double* row(std::size_t r) { return v_.data() + r * cols_; }
    const double* row(std::size_t r) const { return v_.data() + r * cols_; }

    bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> v_;
};

Mat transposed(const Mat& a);
Mat matmul(const Mat& a, const Mat& b);
// a * b^T with b given row-major (rows of b are the contraction vectors)
Mat matmul_bt(const Mat& a, const Mat& b);
Mat vconcat(const Mat& top, const Mat& bottom);
// out = sa*a + sb*b
Mat lin_comb(double sa, const Mat& a, double sb, const Mat& b);

}  // namespace stormfield
