#include "stormfield/mat.hpp"

#include "stormfield/kernels/kernels.hpp"

namespace stormfield {

Mat transposed(const Mat& a) {
    Mat t(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
    return t;
}

Mat matmul_bt(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) throw ValidationError("matmul: inner dimensions disagree");
    const auto dot = kernels::active_table().dot;
    Mat out(a.rows(), b.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < b.rows(); ++c) out(r, c) = dot(a.row(r), b.row(c), a.cols());
    return out;
}

Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw ValidationError("matmul: inner dimensions disagree");
    return matmul_bt(a, transposed(b));
}

Mat vconcat(const Mat& top, const Mat& bottom) {
    if (top.cols() != bottom.cols()) throw ValidationError("vconcat: column counts disagree");
    Mat out(top.rows() + bottom.rows(), top.cols());
    for (std::size_t r = 0; r < top.rows(); ++r)
        for (std::size_t c = 0; c < top.cols(); ++c) out(r, c) = top(r, c);
    for (std::size_t r = 0; r < bottom.rows(); ++r)
        for (std::size_t c = 0; c < bottom.cols(); ++c) out(top.rows() + r, c) = bottom(r, c);
    return out;
}

Mat lin_comb(double sa, const Mat& a, double sb, const Mat& b) {
    if (!a.same_shape(b)) throw ValidationError("lin_comb: shapes disagree");
    Mat out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i)
        out.data()[i] = sa * a.data()[i] + sb * b.data()[i];
    return out;
}

}  // namespace stormfield
