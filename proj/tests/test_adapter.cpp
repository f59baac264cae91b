#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stormfield/attn/adapter.hpp"

#include "support/oracles.hpp"

using namespace stormfield;
using namespace stormfield::attn;

namespace {

AdapterStack random_stack(std::mt19937_64& eng, std::size_t d_out, std::size_t d_in,
                          std::size_t rank, std::initializer_list<const char*> styles) {
    AdapterStack stack(oracles::random_mat(eng, d_out, d_in), rank);
    for (const char* id : styles)
        stack.register_style(id, oracles::random_mat(eng, d_out, rank),
                             oracles::random_mat(eng, rank, d_in));
    return stack;
}

}  // namespace

TEST_CASE("zero factors reduce the forward pass to the base weights") {
    std::mt19937_64 eng(3);
    AdapterStack stack(oracles::random_mat(eng, 6, 5), 2);
    stack.register_style("null", Mat(6, 2), Mat(2, 5));
    const Mat x = oracles::random_mat(eng, 5, 3);
    const Mat h = stack.forward("null", x);
    // adding the zero update must not perturb the base product at all
    const Mat base_path = matmul(stack.base(), x);
    for (std::size_t i = 0; i < h.rows() * h.cols(); ++i)
        CHECK(h.data()[i] == base_path.data()[i]);
    const Mat want = oracles::naive_matmul(stack.base(), x);
    for (std::size_t i = 0; i < h.rows() * h.cols(); ++i)
        CHECK(h.data()[i] == doctest::Approx(want.data()[i]).epsilon(1e-12));
}

TEST_CASE("hand case: identity base plus a rank-1 update") {
    // W0 = I2, L = [[1,0],[0,0]] via A=(1,0)^T, B=(1,0), x=(3,4) -> h=(6,4)
    AdapterStack stack(Mat::identity(2), 1);
    Mat a(2, 1), b(1, 2);
    a(0, 0) = 1.0;
    b(0, 0) = 1.0;
    stack.register_style("bend", std::move(a), std::move(b));
    const auto h = stack.forward("bend", std::vector<double>{3.0, 4.0});
    REQUIRE(h.size() == 2);
    CHECK(h[0] == 6.0);
    CHECK(h[1] == 4.0);
}

TEST_CASE("forward matches a naive two-term evaluation") {
    std::mt19937_64 eng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d_out = 1 + eng() % 10, d_in = 1 + eng() % 10;
        const std::size_t rank = 1 + eng() % std::min(d_out, d_in);
        auto stack = random_stack(eng, d_out, d_in, rank, {"s"});
        const Mat x = oracles::random_mat(eng, d_in, 1 + eng() % 4);
        const Mat l = stack.assemble("s");
        const Mat base = oracles::naive_matmul(stack.base(), x);
        const Mat low = oracles::naive_matmul(l, x);
        const Mat h = stack.forward("s", x);
        for (std::size_t i = 0; i < h.rows() * h.cols(); ++i)
            REQUIRE(h.data()[i] ==
                    doctest::Approx(base.data()[i] + low.data()[i]).epsilon(1e-12));
    }
}

TEST_CASE("assembled updates have rank at most r") {
    std::mt19937_64 eng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d_out = 4 + eng() % 8, d_in = 4 + eng() % 8;
        const std::size_t rank = 1 + eng() % 3;
        auto stack = random_stack(eng, d_out, d_in, rank, {"snow", "rain", "fog"});
        for (const auto& id : stack.style_ids()) {
            const auto sv = oracles::singular_values(stack.assemble(id));
            REQUIRE(sv.front() > 0.0);
            for (std::size_t i = rank; i < sv.size(); ++i)
                REQUIRE(sv[i] < 1e-10 * sv.front());
        }
    }
}

TEST_CASE("registering a style leaves existing styles bitwise untouched") {
    std::mt19937_64 eng(13);
    auto stack = random_stack(eng, 8, 6, 2, {"snow"});
    const Mat x = oracles::random_mat(eng, 6, 2);
    const Mat before = stack.forward("snow", x);
    stack.register_style("rain", oracles::random_mat(eng, 8, 2), oracles::random_mat(eng, 2, 6));
    stack.register_style("fog", oracles::random_mat(eng, 8, 2), oracles::random_mat(eng, 2, 6));
    const Mat after = stack.forward("snow", x);
    for (std::size_t i = 0; i < before.rows() * before.cols(); ++i)
        REQUIRE(before.data()[i] == after.data()[i]);
    CHECK(stack.style_ids().size() == 3);
}

TEST_CASE("three weather styles share one base") {
    std::mt19937_64 eng(17);
    auto stack = random_stack(eng, 8, 8, 2, {"snow", "rain", "fog"});
    CHECK(stack.has_style("snow"));
    CHECK(stack.has_style("rain"));
    CHECK(stack.has_style("fog"));
    const Mat x = oracles::random_mat(eng, 8, 1);
    // distinct low-rank factors give distinct outputs
    const Mat hs = stack.forward("snow", x);
    const Mat hr = stack.forward("rain", x);
    bool differ = false;
    for (std::size_t i = 0; i < hs.rows(); ++i) differ = differ || hs(i, 0) != hr(i, 0);
    CHECK(differ);
}

TEST_CASE("lookup and registration errors") {
    std::mt19937_64 eng(19);
    auto stack = random_stack(eng, 5, 4, 2, {"snow"});
    const Mat x = oracles::random_mat(eng, 4, 1);
    CHECK_THROWS_AS(stack.forward("sleet", x), ValidationError);
    CHECK_THROWS_AS(stack.forward("snow", oracles::random_mat(eng, 3, 1)), ValidationError);
    CHECK_THROWS_AS(
        stack.register_style("snow", oracles::random_mat(eng, 5, 2), oracles::random_mat(eng, 2, 4)),
        ValidationError);
    CHECK_THROWS_AS(
        stack.register_style("hail", oracles::random_mat(eng, 5, 3), oracles::random_mat(eng, 3, 4)),
        ValidationError);
    CHECK_THROWS_AS(
        stack.register_style("mist", oracles::random_mat(eng, 4, 2), oracles::random_mat(eng, 2, 4)),
        ValidationError);
    CHECK_THROWS_AS(AdapterStack(Mat(4, 4), 0), ValidationError);
    CHECK_THROWS_AS(AdapterStack(Mat(4, 4), 5), ValidationError);
}
