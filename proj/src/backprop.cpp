#include "infobound/backprop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "infobound/errors.hpp"

namespace infobound {

namespace {

double activation_derivative(Activation act, double post) {
    // All four derivatives are recoverable from the post-activation value;
    // relu uses the 0 subgradient at the kink.
    switch (act) {
        case Activation::relu: return post > 0.0 ? 1.0 : 0.0;
        case Activation::tanh: return 1.0 - post * post;
        case Activation::sigmoid: return post * (1.0 - post);
        case Activation::identity: return 1.0;
    }
    return 1.0;
}

// Propagates dL/d(output) through one layer: fills the weight gradient (dense
// and conv2d) and returns dL/d(input).
Tensor backprop_layer(const Layer& layer, const Tensor& input, const Tensor& output,
                      const Tensor& dout_post, Tensor* weight_grad) {
    const std::size_t n = input.rows();
    const std::size_t in = layer.in_dim(), od = layer.out_dim();

    // Pre-activation gradient.
    std::vector<double> dz(n * od);
    for (std::size_t i = 0; i < n * od; ++i)
        dz[i] = dout_post.data()[i] * activation_derivative(layer.activation(), output.data()[i]);

    std::vector<double> dx(n * in, 0.0);

    switch (layer.kind()) {
        case LayerKind::dense: {
            const auto& w = layer.weights().data();
            std::vector<double> dw(od * in, 0.0);
            for (std::size_t e = 0; e < n; ++e)
                for (std::size_t i = 0; i < od; ++i) {
                    double g = dz[e * od + i];
                    if (g == 0.0) continue;
                    for (std::size_t j = 0; j < in; ++j) {
                        dw[i * in + j] += g * input.data()[e * in + j];
                        dx[e * in + j] += g * w[i * in + j];
                    }
                }
            if (weight_grad) *weight_grad = Tensor({od, in}, std::move(dw));
            break;
        }
        case LayerKind::conv2d: {
            const auto& g = layer.geometry();
            const auto& w = layer.weights().data();
            const std::size_t oh = g.out_height(), ow = g.out_width();
            std::vector<double> dw(layer.weights().size(), 0.0);
            for (std::size_t e = 0; e < n; ++e)
                for (std::size_t co = 0; co < g.out_channels; ++co)
                    for (std::size_t r = 0; r < oh; ++r)
                        for (std::size_t c = 0; c < ow; ++c) {
                            double gz = dz[e * od + (co * oh + r) * ow + c];
                            if (gz == 0.0) continue;
                            for (std::size_t ci = 0; ci < g.in_channels; ++ci)
                                for (std::size_t kr = 0; kr < g.kernel; ++kr)
                                    for (std::size_t kc = 0; kc < g.kernel; ++kc) {
                                        std::size_t xi =
                                            (ci * g.height + r * g.stride + kr) * g.width +
                                            c * g.stride + kc;
                                        std::size_t wi =
                                            ((co * g.in_channels + ci) * g.kernel + kr) * g.kernel +
                                            kc;
                                        dw[wi] += gz * input.data()[e * in + xi];
                                        dx[e * in + xi] += gz * w[wi];
                                    }
                        }
            if (weight_grad) *weight_grad = Tensor(layer.weights().shape(), std::move(dw));
            break;
        }
        case LayerKind::maxpool: {
            const auto& g = layer.geometry();
            const std::size_t oh = g.out_height(), ow = g.out_width();
            for (std::size_t e = 0; e < n; ++e)
                for (std::size_t ch = 0; ch < g.in_channels; ++ch)
                    for (std::size_t r = 0; r < oh; ++r)
                        for (std::size_t c = 0; c < ow; ++c) {
                            // Route to the first maximal element in the window.
                            std::size_t best = 0;
                            double bestv = -std::numeric_limits<double>::infinity();
                            for (std::size_t kr = 0; kr < g.kernel; ++kr)
                                for (std::size_t kc = 0; kc < g.kernel; ++kc) {
                                    std::size_t xi =
                                        (ch * g.height + r * g.stride + kr) * g.width +
                                        c * g.stride + kc;
                                    double xv = input.data()[e * in + xi];
                                    if (xv > bestv) { bestv = xv; best = xi; }
                                }
                            dx[e * in + best] += dz[e * od + (ch * oh + r) * ow + c];
                        }
            break;
        }
        case LayerKind::avgpool: {
            const auto& g = layer.geometry();
            const std::size_t oh = g.out_height(), ow = g.out_width();
            const double inv = 1.0 / static_cast<double>(g.kernel * g.kernel);
            for (std::size_t e = 0; e < n; ++e)
                for (std::size_t ch = 0; ch < g.in_channels; ++ch)
                    for (std::size_t r = 0; r < oh; ++r)
                        for (std::size_t c = 0; c < ow; ++c) {
                            double gz = dz[e * od + (ch * oh + r) * ow + c] * inv;
                            for (std::size_t kr = 0; kr < g.kernel; ++kr)
                                for (std::size_t kc = 0; kc < g.kernel; ++kc)
                                    dx[e * in + (ch * g.height + r * g.stride + kr) * g.width +
                                       c * g.stride + kc] += gz;
                        }
            break;
        }
    }
    return Tensor({n, in}, std::move(dx));
}

}  // namespace

GradientSet backward_from_logit_grads(const Network& net, const ActivationChain& chain,
                                      const Tensor& logit_grads) {
    if (chain.stages.size() != net.depth() + 1)
        throw ShapeError("backward: chain does not match network depth");
    if (!logit_grads.same_shape(chain.head_logits))
        throw ShapeError("backward: logit gradient shape mismatch");

    GradientSet grads;
    grads.layers.resize(net.depth());

    Tensor dcur = backprop_layer(net.head(), chain.stages.back(), chain.head_logits, logit_grads,
                                 &grads.head);
    for (std::size_t k = net.depth(); k-- > 0;) {
        Tensor* wg = net.layers()[k].has_weights() ? &grads.layers[k] : nullptr;
        dcur = backprop_layer(net.layers()[k], chain.stages[k], chain.stages[k + 1], dcur, wg);
    }
    return grads;
}

GradientSet backward(const Network& net, const Tensor& batch, const std::vector<int>& labels,
                     const LossEvaluator& loss) {
    if (loss.kind == LossKind::zero_one)
        throw std::invalid_argument("backward: zero_one loss is not differentiable");
    if (batch.rank() != 2 || batch.rows() == 0) throw ShapeError("backward: batch must be nonempty 2-D");
    if (labels.size() != batch.rows()) throw ShapeError("backward: labels size != batch rows");

    ActivationChain chain = forward(net, batch);
    const std::size_t n = batch.rows(), classes = net.out_dim();

    // d(mean clipped CE)/d logits: softmax minus one-hot, zeroed where the
    // raw loss is outside the clip range.
    std::vector<double> dlogits(n * classes, 0.0);
    for (std::size_t e = 0; e < n; ++e) {
        auto logits = chain.head_logits.row(e);
        double raw = raw_cross_entropy(logits, labels[e]);
        if (raw <= loss.lo || raw >= loss.hi) continue;

        double m = *std::max_element(logits.begin(), logits.end());
        double sum = 0.0;
        for (double v : logits) sum += std::exp(v - m);
        for (std::size_t c = 0; c < classes; ++c) {
            double p = std::exp(logits[c] - m) / sum;
            double onehot = (static_cast<std::size_t>(labels[e]) == c) ? 1.0 : 0.0;
            dlogits[e * classes + c] = (p - onehot) / static_cast<double>(n);
        }
    }
    return backward_from_logit_grads(net, chain, Tensor({n, classes}, std::move(dlogits)));
}

}  // namespace infobound
