#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "infobound/backprop.hpp"
#include "infobound/errors.hpp"
#include "infobound/rng.hpp"
#include "support/test_oracles.hpp"

using namespace infobound;

TEST_CASE("zero_one loss is rejected as non-differentiable") {
    Network net({}, Layer::dense(2, 2, Tensor::zeros({2, 2})));
    CHECK_THROWS_AS(backward(net, Tensor({1, 2}, {1, 2}), {0}, LossEvaluator::zero_one()),
                    std::invalid_argument);
}

TEST_CASE("squared-error linear head has the closed-form gradient 2(y_hat - y) x") {
    // Single example through a bare linear head; the squared-error variant is
    // driven through the logit-gradient entry point.
    Network net({}, Layer::dense(3, 1, Tensor::matrix(1, 3, {0.5, -1.0, 2.0})));
    Tensor x({1, 3}, {1.0, 2.0, -0.5});
    ActivationChain chain = forward(net, x);
    double y_hat = chain.head_logits.data()[0];
    double y = 0.7;
    Tensor dlogits({1, 1}, {2.0 * (y_hat - y)});
    GradientSet grads = backward_from_logit_grads(net, chain, dlogits);
    for (std::size_t j = 0; j < 3; ++j)
        CHECK(grads.head.data()[j] == doctest::Approx(2.0 * (y_hat - y) * x.data()[j]).epsilon(1e-13));
}

TEST_CASE("losses at the clip floor produce zero gradients") {
    // Confident, correct predictions with a clip floor above the attainable
    // raw loss: the whole batch sits in the flat region.
    Network net({Layer::dense(2, 2, Tensor::matrix(2, 2, {3, 0, 0, 3}), Activation::identity)},
                Layer::dense(2, 2, Tensor::matrix(2, 2, {4, -4, -4, 4})));
    Tensor batch({2, 2}, {1.0, -1.0, -1.0, 1.0});
    std::vector<int> labels{0, 1};
    LossEvaluator loss = LossEvaluator::clipped_cross_entropy(0.5, 4.0);
    REQUIRE(testing::batch_mean_loss(net, batch, labels, loss) == 0.5);

    GradientSet grads = backward(net, batch, labels, loss);
    for (double g : grads.head.data()) CHECK(g == 0.0);
    for (double g : grads.layers[0].data()) CHECK(g == 0.0);
}

TEST_CASE("backward matches central finite differences on random nets") {
    CounterRng rng(21, 0, 0);
    std::vector<Activation> smooth{Activation::tanh, Activation::sigmoid, Activation::identity};
    LossEvaluator loss = LossEvaluator::clipped_cross_entropy(0.0, 30.0);

    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Network net = testing::random_dense_network(rng, smooth);
        Tensor batch = testing::random_batch(rng, 1 + rng.uniform_below(4), net.in_dim());
        std::vector<int> labels(batch.rows());
        for (auto& l : labels) l = static_cast<int>(rng.uniform_below(net.out_dim()));

        GradientSet analytic = backward(net, batch, labels, loss);
        GradientSet fd = testing::finite_difference_gradients(net, batch, labels, loss);

        CHECK(testing::norm_relative_error(analytic.head, fd.head) <= 1e-5);
        for (std::size_t k = 0; k < net.depth(); ++k)
            CHECK(testing::norm_relative_error(analytic.layers[k], fd.layers[k]) <= 1e-5);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("backward matches finite differences through conv and pooling") {
    CounterRng rng(22, 0, 0);
    LossEvaluator loss = LossEvaluator::clipped_cross_entropy(0.0, 30.0);
    ConvGeometry cg{1, 2, 4, 4, 2, 1};
    ConvGeometry pg{2, 2, 3, 3, 2, 1};
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> kern(2 * 1 * 2 * 2);
        for (double& v : kern) v = rng.gaussian();
        Network net({Layer::conv2d(cg, Tensor({2, 1, 2, 2}, kern), Activation::tanh),
                     Layer::avgpool(pg)},
                    Layer::dense(8, 2, [&] {
                        std::vector<double> hw(16);
                        for (double& v : hw) v = rng.gaussian();
                        return Tensor::matrix(2, 8, hw);
                    }()));
        Tensor batch = testing::random_batch(rng, 2, 16);
        std::vector<int> labels{0, 1};
        GradientSet analytic = backward(net, batch, labels, loss);
        GradientSet fd = testing::finite_difference_gradients(net, batch, labels, loss);
        CHECK(testing::norm_relative_error(analytic.head, fd.head) <= 1e-5);
        CHECK(testing::norm_relative_error(analytic.layers[0], fd.layers[0]) <= 1e-5);
        CHECK(analytic.layers[1].size() == 0);  // pooling has no weights
    }
}

TEST_CASE("relu backprop matches finite differences away from the kink") {
    CounterRng rng(23, 0, 0);
    LossEvaluator loss = LossEvaluator::clipped_cross_entropy(0.0, 30.0);
    int accepted = 0;
    for (int trial = 0; trial < 200 && accepted < 20; ++trial) {
        Network net = testing::random_dense_network(rng, {Activation::relu});
        Tensor batch = testing::random_batch(rng, 2, net.in_dim());
        std::vector<int> labels(batch.rows());
        for (auto& l : labels) l = static_cast<int>(rng.uniform_below(net.out_dim()));

        // Skip batches with a pre-activation close enough to the kink for the
        // finite-difference step to straddle it.
        ActivationChain chain = forward(net, batch);
        bool near_kink = false;
        for (std::size_t k = 0; k < net.depth(); ++k) {
            Layer linear = Layer::dense(net.layers()[k].in_dim(), net.layers()[k].out_dim(),
                                        net.layers()[k].weights());
            for (double z : apply_layer(linear, chain.stages[k]).data())
                near_kink |= std::abs(z) < 1e-3;
        }
        if (near_kink) continue;

        GradientSet analytic = backward(net, batch, labels, loss);
        GradientSet fd = testing::finite_difference_gradients(net, batch, labels, loss, 1e-6);
        CHECK(testing::norm_relative_error(analytic.head, fd.head) <= 1e-4);
        ++accepted;
    }
    CHECK(accepted == 20);
}
