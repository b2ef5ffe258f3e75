#pragma once

// Test-only oracles. These deliberately avoid the library's gradient and
// enumeration paths: losses are evaluated through forward() only, so the
// finite-difference gradients are an independent check on backprop.

#include <cstdint>
#include <vector>

#include "infobound/backprop.hpp"
#include "infobound/loss.hpp"
#include "infobound/network.hpp"
#include "infobound/rng.hpp"
#include "infobound/tensor.hpp"

namespace infobound::testing {

inline double batch_mean_loss(const Network& net, const Tensor& batch,
                              const std::vector<int>& labels, const LossEvaluator& loss) {
    ActivationChain chain = forward(net, batch);
    double total = 0.0;
    for (std::size_t e = 0; e < batch.rows(); ++e)
        total += evaluate_loss(loss, chain.head_logits.row(e), labels[e]);
    return total / static_cast<double>(batch.rows());
}

// Central finite differences over every trainable weight entry.
inline GradientSet finite_difference_gradients(const Network& net, const Tensor& batch,
                                               const std::vector<int>& labels,
                                               const LossEvaluator& loss, double h = 1e-5) {
    GradientSet out;
    out.layers.resize(net.depth());

    auto grad_for = [&](const Tensor& weights, auto rebuild) {
        std::vector<double> g(weights.size());
        for (std::size_t i = 0; i < weights.size(); ++i) {
            std::vector<double> plus = weights.data(), minus = weights.data();
            plus[i] += h;
            minus[i] -= h;
            double lp = batch_mean_loss(rebuild(Tensor(weights.shape(), plus)), batch, labels, loss);
            double lm = batch_mean_loss(rebuild(Tensor(weights.shape(), minus)), batch, labels, loss);
            g[i] = (lp - lm) / (2.0 * h);
        }
        return Tensor(weights.shape(), std::move(g));
    };

    for (std::size_t k = 0; k < net.depth(); ++k) {
        if (!net.layers()[k].has_weights()) continue;
        out.layers[k] = grad_for(net.layers()[k].weights(),
                                 [&](Tensor w) { return net.with_layer_weights(k, std::move(w)); });
    }
    out.head = grad_for(net.head().weights(),
                        [&](Tensor w) { return net.with_head_weights(std::move(w)); });
    return out;
}

inline double norm_relative_error(const Tensor& a, const Tensor& b) {
    double diff = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a.data()[i] - b.data()[i];
        diff += d * d;
        na += a.data()[i] * a.data()[i];
        nb += b.data()[i] * b.data()[i];
    }
    double scale = std::max({std::sqrt(na), std::sqrt(nb), 1e-12});
    return std::sqrt(diff) / scale;
}

// Small random dense network for property tests.
inline Network random_dense_network(CounterRng& rng, const std::vector<Activation>& acts,
                                    std::size_t max_depth = 3, std::size_t max_width = 5) {
    std::size_t depth = rng.uniform_below(max_depth + 1);
    std::size_t in_dim = 1 + rng.uniform_below(max_width);
    std::vector<Layer> layers;
    std::size_t cur = in_dim;
    for (std::size_t k = 0; k < depth; ++k) {
        std::size_t next = 1 + rng.uniform_below(max_width);
        std::vector<double> w(next * cur);
        for (double& v : w) v = rng.gaussian();
        layers.push_back(Layer::dense(cur, next, Tensor::matrix(next, cur, std::move(w)),
                                      acts[rng.uniform_below(acts.size())]));
        cur = next;
    }
    std::size_t classes = 2 + rng.uniform_below(2);
    std::vector<double> hw(classes * cur);
    for (double& v : hw) v = rng.gaussian();
    return Network(std::move(layers), Layer::dense(cur, classes, Tensor::matrix(classes, cur, hw)));
}

inline Tensor random_batch(CounterRng& rng, std::size_t n, std::size_t dim) {
    std::vector<double> x(n * dim);
    for (double& v : x) v = rng.gaussian();
    return Tensor({n, dim}, std::move(x));
}

}  // namespace infobound::testing
