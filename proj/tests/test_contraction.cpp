#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "infobound/contraction.hpp"
#include "infobound/errors.hpp"
#include "infobound/linalg.hpp"
#include "infobound/rng.hpp"
#include "support/test_oracles.hpp"

using namespace infobound;

namespace {

Layer random_rank_deficient(CounterRng& rng) {
    // Product of (m x r)(r x n) with r < n has rank at most r < n.
    std::size_t n = 2 + rng.uniform_below(5);                      // in_dim 2..6
    std::size_t m = 1 + rng.uniform_below(6);                      // out_dim 1..6
    std::size_t r = rng.uniform_below(std::min(m, n - 1)) + 1;     // 1..min(m, n-1)
    if (r >= n) r = n - 1;
    std::vector<double> a(m * r), b(r * n), w(m * n, 0.0);
    for (double& v : a) v = rng.gaussian();
    for (double& v : b) v = rng.gaussian();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < r; ++k) w[i * n + j] += a[i * r + k] * b[k * n + j];
    return Layer::dense(n, m, Tensor::matrix(m, n, std::move(w)), Activation::tanh);
}

Layer random_full_rank_square(CounterRng& rng) {
    // Gaussian square matrices are almost surely well-conditioned at these
    // sizes; reject anything with a suspiciously small singular value.
    for (;;) {
        std::size_t n = 2 + rng.uniform_below(5);
        std::vector<double> w(n * n);
        for (double& v : w) v = rng.gaussian();
        SvdResult svd = jacobi_svd(w, n, n);
        if (svd.singular_values.back() > 1e-6 * svd.singular_values.front())
            return Layer::dense(n, n, Tensor::matrix(n, n, std::move(w)));
    }
}

}  // namespace

TEST_CASE("weight_rank goldens") {
    RankResult zero = weight_rank(Layer::dense(3, 3, Tensor::zeros({3, 3})));
    CHECK(zero.rank == 0);
    CHECK(zero.is_contraction);

    RankResult eye = weight_rank(
        Layer::dense(4, 4, Tensor::matrix(4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1})));
    CHECK(eye.rank == 4);
    CHECK_FALSE(eye.is_contraction);

    // Any 3x5 weight: rank <= 3 < 5.
    CounterRng rng(31, 0, 0);
    std::vector<double> w(15);
    for (double& v : w) v = rng.gaussian();
    RankResult wide = weight_rank(Layer::dense(5, 3, Tensor::matrix(3, 5, std::move(w))));
    CHECK(wide.rank <= 3);
    CHECK(wide.is_contraction);
}

TEST_CASE("weight_rank is monotone in the tolerance") {
    CounterRng rng(32, 0, 0);
    for (int trial = 0; trial < 50; ++trial) {
        Layer layer = random_rank_deficient(rng);
        std::size_t prev = weight_rank(layer, 1e-14).rank;
        for (double tol : {1e-10, 1e-6, 1e-2, 0.5, 2.0}) {
            std::size_t cur = weight_rank(layer, tol).rank;
            CHECK(cur <= prev);
            prev = cur;
        }
    }
}

TEST_CASE("weight_rank rejects pooling layers") {
    ConvGeometry g{1, 1, 2, 2, 2, 2};
    CHECK_THROWS_AS(weight_rank(Layer::maxpool(g)), InapplicableLayerError);
    CHECK_THROWS_AS(weight_rank(Layer::avgpool(g)), InapplicableLayerError);
    CHECK(is_contraction_layer(Layer::maxpool(g)));
    CHECK(is_contraction_layer(Layer::avgpool(g)));
}

TEST_CASE("conv2d rank analysis uses the flattened operator") {
    // Valid convolution shrinks the spatial extent, so in_dim > out_dim and
    // the operator cannot have full column rank.
    ConvGeometry g{1, 1, 3, 3, 2, 1};
    Layer conv = Layer::conv2d(g, Tensor({1, 1, 2, 2}, {1.0, 0.5, -0.5, 2.0}));
    Tensor op = flatten_operator(conv);
    CHECK(op.rows() == 4);
    CHECK(op.cols() == 9);
    RankResult r = weight_rank(conv);
    CHECK(r.rank <= 4);
    CHECK(r.is_contraction);
}

TEST_CASE("collision witness: hand-computed null direction") {
    Layer layer = Layer::dense(2, 1, Tensor::matrix(1, 2, {1, 1}), Activation::relu);
    Tensor x({2}, {1.0, 0.0});
    auto witness = collision_witness(layer, x);
    REQUIRE(witness.has_value());
    // x' = [1 + c, -c] for some c != 0: the displacement is along (1, -1).
    double a0 = witness->data()[0] - 1.0;
    double a1 = witness->data()[1];
    CHECK(std::abs(a0 + a1) < 1e-12);
    CHECK(std::abs(a0) > 1e-8);
    Tensor y = apply_layer(layer, Tensor({1, 2}, {x.data()[0], x.data()[1]}));
    Tensor yp = apply_layer(layer, Tensor({1, 2}, {witness->data()[0], witness->data()[1]}));
    CHECK(std::abs(y.data()[0] - yp.data()[0]) < 1e-12);
}

TEST_CASE("collision witness: zero matrix collides everything") {
    Layer layer = Layer::dense(3, 2, Tensor::zeros({2, 3}));
    auto witness = collision_witness(layer, Tensor({3}, {0.5, -1.0, 2.0}));
    REQUIRE(witness.has_value());
    CHECK(*witness != Tensor({3}, {0.5, -1.0, 2.0}));
}

TEST_CASE("collision witness soundness on random rank-deficient layers") {
    CounterRng rng(33, 0, 0);
    for (int trial = 0; trial < 100; ++trial) {
        Layer layer = random_rank_deficient(rng);
        Tensor x = testing::random_batch(rng, 1, layer.in_dim());
        auto witness = collision_witness(layer, x);
        REQUIRE(witness.has_value());
        CHECK(*witness != x);
        Tensor y = apply_layer(layer, x);
        Tensor yp = apply_layer(layer, *witness);
        for (std::size_t i = 0; i < y.size(); ++i)
            CHECK(std::abs(y.data()[i] - yp.data()[i]) <= 1e-8);
    }
}

TEST_CASE("no witness on random full-rank square layers") {
    CounterRng rng(34, 0, 0);
    for (int trial = 0; trial < 100; ++trial) {
        Layer layer = random_full_rank_square(rng);
        Tensor x = testing::random_batch(rng, 1, layer.in_dim());
        CHECK_FALSE(collision_witness(layer, x).has_value());
    }
}

TEST_CASE("collision witness rejects non-dense layers") {
    ConvGeometry g{1, 1, 2, 2, 2, 2};
    CHECK_THROWS_AS(collision_witness(Layer::maxpool(g), Tensor({4}, {1, 2, 3, 4})),
                    InapplicableLayerError);
}

TEST_CASE("jacobi svd reproduces known singular values") {
    // diag(3, 2) embedded in 2x3: singular values {3, 2, 0}.
    SvdResult svd = jacobi_svd({3, 0, 0, 0, 2, 0}, 2, 3);
    CHECK(svd.singular_values[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(svd.singular_values[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(svd.singular_values[2] == doctest::Approx(0.0).epsilon(1e-12));
}
