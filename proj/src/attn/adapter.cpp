#include "stormfield/attn/adapter.hpp"

#include <cmath>

namespace stormfield::attn {

AdapterStack::AdapterStack(Mat base, std::size_t rank) : base_(std::move(base)), rank_(rank) {
    if (base_.rows() < 1 || base_.cols() < 1)
        throw ValidationError("adapter: base matrix is empty");
    for (std::size_t i = 0; i < base_.rows() * base_.cols(); ++i)
        if (!std::isfinite(base_.data()[i]))
            throw ValidationError("adapter: non-finite base weight");
    if (rank_ < 1 || rank_ > std::min(base_.rows(), base_.cols()))
        throw ValidationError("adapter: rank must lie in [1, min(d_out, d_in)]");
}

void AdapterStack::register_style(const std::string& style_id, Mat a, Mat b) {
    if (styles_.count(style_id) != 0)
        throw ValidationError("adapter: style '" + style_id + "' already registered");
    if (a.rows() != d_out() || a.cols() != rank_)
        throw ValidationError("adapter: style '" + style_id + "' A factor must be d_out x rank");
    if (b.rows() != rank_ || b.cols() != d_in())
        throw ValidationError("adapter: style '" + style_id + "' B factor must be rank x d_in");
    for (const Mat* m : {&a, &b})
        for (std::size_t i = 0; i < m->rows() * m->cols(); ++i)
            if (!std::isfinite(m->data()[i]))
                throw ValidationError("adapter: style '" + style_id + "' has non-finite weights");
    styles_.emplace(style_id, StylePair{std::move(a), std::move(b)});
}

bool AdapterStack::has_style(const std::string& style_id) const {
    return styles_.count(style_id) != 0;
}

std::vector<std::string> AdapterStack::style_ids() const {
    std::vector<std::string> ids;
    ids.reserve(styles_.size());
    for (const auto& [id, _] : styles_) ids.push_back(id);
    return ids;
}

const AdapterStack::StylePair& AdapterStack::lookup(const std::string& style_id) const {
    const auto it = styles_.find(style_id);
    if (it == styles_.end())
        throw ValidationError("adapter: unknown style '" + style_id + "'");
    return it->second;
}

Mat AdapterStack::forward(const std::string& style_id, const Mat& x) const {
    const StylePair& s = lookup(style_id);
    if (x.rows() != d_in())
        throw ValidationError("adapter: input has " + std::to_string(x.rows()) +
                              " rows, expected " + std::to_string(d_in()));
    const Mat base_term = matmul(base_, x);
    const Mat low = matmul(s.a, matmul(s.b, x));
    return lin_comb(1.0, base_term, 1.0, low);
}

std::vector<double> AdapterStack::forward(const std::string& style_id,
                                          const std::vector<double>& x) const {
    Mat xm(x.size(), 1);
    for (std::size_t i = 0; i < x.size(); ++i) xm(i, 0) = x[i];
    const Mat h = forward(style_id, xm);
    std::vector<double> out(h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i) out[i] = h(i, 0);
    return out;
}

Mat AdapterStack::assemble(const std::string& style_id) const {
    const StylePair& s = lookup(style_id);
    return matmul(s.a, s.b);
}

}  // namespace stormfield::attn
