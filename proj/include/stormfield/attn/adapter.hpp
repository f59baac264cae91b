#pragma once

#include <map>
#include <string>
#include <vector>

#include "stormfield/mat.hpp"

namespace stormfield::attn {

// One shared base weight matrix plus a registry of factored low-rank style
// updates; forward(style, x) = W0 x + A_style (B_style x).
class AdapterStack {
public:
    // base: d_out x d_in; rank: shared factor rank, 1 <= rank <= min(dims)
    AdapterStack(Mat base, std::size_t rank);

    // a: d_out x rank, b: rank x d_in; duplicate ids and shape mismatches rejected
    void register_style(const std::string& style_id, Mat a, Mat b);

    bool has_style(const std::string& style_id) const;
    std::vector<std::string> style_ids() const;

    // x: d_in x m (columns are samples)
    Mat forward(const std::string& style_id, const Mat& x) const;
    std::vector<double> forward(const std::string& style_id,
                                const std::vector<double>& x) const;

    // assembled update L = A * B for one style
    Mat assemble(const std::string& style_id) const;

    const Mat& base() const { return base_; }
    std::size_t rank() const { return rank_; }
    std::size_t d_out() const { return base_.rows(); }
    std::size_t d_in() const { return base_.cols(); }

private:
    struct StylePair {
        Mat a, b;
    };
    const StylePair& lookup(const std::string& style_id) const;

    Mat base_;
    std::size_t rank_;
    std::map<std::string, StylePair> styles_;
};

}  // namespace stormfield::attn
