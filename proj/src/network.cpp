#include "infobound/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "infobound/errors.hpp"

namespace infobound {

std::string to_string(LayerKind kind) {
    switch (kind) {
        case LayerKind::dense: return "dense";
        case LayerKind::conv2d: return "conv2d";
        case LayerKind::maxpool: return "maxpool";
        case LayerKind::avgpool: return "avgpool";
    }
    return "?";
}

std::string to_string(Activation act) {
    switch (act) {
        case Activation::relu: return "relu";
        case Activation::tanh: return "tanh";
        case Activation::sigmoid: return "sigmoid";
        case Activation::identity: return "identity";
    }
    return "?";
}

LayerKind layer_kind_from_string(const std::string& s) {
    if (s == "dense") return LayerKind::dense;
    if (s == "conv2d") return LayerKind::conv2d;
    if (s == "maxpool") return LayerKind::maxpool;
    if (s == "avgpool") return LayerKind::avgpool;
    throw ConfigError("unknown layer kind: " + s);
}

Activation activation_from_string(const std::string& s) {
    if (s == "relu") return Activation::relu;
    if (s == "tanh") return Activation::tanh;
    if (s == "sigmoid") return Activation::sigmoid;
    if (s == "identity") return Activation::identity;
    throw ConfigError("unknown activation: " + s);
}

namespace {

void check_pool_geometry(const ConvGeometry& g, const char* what) {
    if (g.height == 0 || g.width == 0 || g.kernel == 0 || g.stride == 0)
        throw ShapeError(std::string(what) + ": zero geometry entry");
    if (g.kernel > g.height || g.kernel > g.width)
        throw ShapeError(std::string(what) + ": kernel larger than input");
}

}  // namespace

Layer Layer::dense(std::size_t in_dim, std::size_t out_dim, Tensor weights, Activation act) {
    if (weights.shape() != std::vector<std::size_t>{out_dim, in_dim})
        throw ShapeError("dense layer: weights must be (out_dim, in_dim)");
    Layer l;
    l.kind_ = LayerKind::dense;
    l.activation_ = act;
    l.in_dim_ = in_dim;
    l.out_dim_ = out_dim;
    l.weights_ = std::move(weights);
    return l;
}

Layer Layer::conv2d(ConvGeometry geom, Tensor kernels, Activation act) {
    check_pool_geometry(geom, "conv2d");
    std::vector<std::size_t> want{geom.out_channels, geom.in_channels, geom.kernel, geom.kernel};
    if (kernels.shape() != want)
        throw ShapeError("conv2d layer: kernels must be (out_ch, in_ch, k, k)");
    Layer l;
    l.kind_ = LayerKind::conv2d;
    l.activation_ = act;
    l.in_dim_ = geom.in_channels * geom.height * geom.width;
    l.out_dim_ = geom.out_channels * geom.out_height() * geom.out_width();
    l.weights_ = std::move(kernels);
    l.geom_ = geom;
    return l;
}

Layer Layer::maxpool(ConvGeometry geom) {
    check_pool_geometry(geom, "maxpool");
    geom.out_channels = geom.in_channels;
    Layer l;
    l.kind_ = LayerKind::maxpool;
    l.activation_ = Activation::identity;
    l.in_dim_ = geom.in_channels * geom.height * geom.width;
    l.out_dim_ = geom.in_channels * geom.out_height() * geom.out_width();
    l.geom_ = geom;
    return l;
}

Layer Layer::avgpool(ConvGeometry geom) {
    check_pool_geometry(geom, "avgpool");
    geom.out_channels = geom.in_channels;
    Layer l;
    l.kind_ = LayerKind::avgpool;
    l.activation_ = Activation::identity;
    l.in_dim_ = geom.in_channels * geom.height * geom.width;
    l.out_dim_ = geom.in_channels * geom.out_height() * geom.out_width();
    l.geom_ = geom;
    return l;
}

Layer Layer::with_weights(Tensor weights) const {
    if (weights.shape() != weights_.shape())
        throw ShapeError("with_weights: shape mismatch");
    Layer l = *this;
    l.weights_ = std::move(weights);
    return l;
}

Network::Network(std::vector<Layer> layers, Layer head)
    : layers_(std::move(layers)), head_(std::move(head)) {
    if (head_.kind() != LayerKind::dense)
        throw ShapeError("network head must be a dense layer");
    for (std::size_t k = 0; k + 1 < layers_.size(); ++k) {
        if (layers_[k].out_dim() != layers_[k + 1].in_dim())
            throw ShapeError("layer " + std::to_string(k) + ": out_dim " +
                             std::to_string(layers_[k].out_dim()) + " does not chain to layer " +
                             std::to_string(k + 1));
    }
    if (!layers_.empty() && layers_.back().out_dim() != head_.in_dim())
        throw ShapeError("last hidden layer out_dim does not match head in_dim");
}

Network Network::with_layer_weights(std::size_t k, Tensor weights) const {
    std::vector<Layer> ls = layers_;
    ls.at(k) = ls.at(k).with_weights(std::move(weights));
    return Network(std::move(ls), head_);
}

Network Network::with_head_weights(Tensor weights) const {
    return Network(layers_, head_.with_weights(std::move(weights)));
}

namespace {

double activate(Activation act, double z) {
    switch (act) {
        case Activation::relu: return z > 0.0 ? z : 0.0;
        case Activation::tanh: return std::tanh(z);
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
        case Activation::identity: return z;
    }
    return z;
}

}  // namespace

Tensor apply_layer(const Layer& layer, const Tensor& batch) {
    if (batch.rank() != 2)
        throw ShapeError("apply_layer: batch must be 2-D (examples x features)");
    if (batch.cols() != layer.in_dim())
        throw ShapeError("apply_layer: batch feature dim " + std::to_string(batch.cols()) +
                         " != layer in_dim " + std::to_string(layer.in_dim()));
    const std::size_t n = batch.rows();
    std::vector<double> out(n * layer.out_dim(), 0.0);

    switch (layer.kind()) {
        case LayerKind::dense: {
            const auto& w = layer.weights().data();
            const std::size_t in = layer.in_dim(), od = layer.out_dim();
            for (std::size_t e = 0; e < n; ++e) {
                auto x = batch.row(e);
                for (std::size_t i = 0; i < od; ++i) {
                    double z = 0.0;
                    for (std::size_t j = 0; j < in; ++j) z += w[i * in + j] * x[j];
                    out[e * od + i] = activate(layer.activation(), z);
                }
            }
            break;
        }
        case LayerKind::conv2d: {
            const auto& g = layer.geometry();
            const auto& w = layer.weights().data();
            const std::size_t oh = g.out_height(), ow = g.out_width();
            for (std::size_t e = 0; e < n; ++e) {
                auto x = batch.row(e);
                for (std::size_t co = 0; co < g.out_channels; ++co)
                    for (std::size_t r = 0; r < oh; ++r)
                        for (std::size_t c = 0; c < ow; ++c) {
                            double z = 0.0;
                            for (std::size_t ci = 0; ci < g.in_channels; ++ci)
                                for (std::size_t kr = 0; kr < g.kernel; ++kr)
                                    for (std::size_t kc = 0; kc < g.kernel; ++kc) {
                                        std::size_t ir = r * g.stride + kr;
                                        std::size_t ic = c * g.stride + kc;
                                        double xv = x[(ci * g.height + ir) * g.width + ic];
                                        double wv = w[((co * g.in_channels + ci) * g.kernel + kr) *
                                                          g.kernel + kc];
                                        z += xv * wv;
                                    }
                            out[e * layer.out_dim() + (co * oh + r) * ow + c] =
                                activate(layer.activation(), z);
                        }
            }
            break;
        }
        case LayerKind::maxpool:
        case LayerKind::avgpool: {
            const auto& g = layer.geometry();
            const std::size_t oh = g.out_height(), ow = g.out_width();
            const double win = static_cast<double>(g.kernel * g.kernel);
            for (std::size_t e = 0; e < n; ++e) {
                auto x = batch.row(e);
                for (std::size_t ch = 0; ch < g.in_channels; ++ch)
                    for (std::size_t r = 0; r < oh; ++r)
                        for (std::size_t c = 0; c < ow; ++c) {
                            double acc = layer.kind() == LayerKind::maxpool
                                             ? -std::numeric_limits<double>::infinity()
                                             : 0.0;
                            for (std::size_t kr = 0; kr < g.kernel; ++kr)
                                for (std::size_t kc = 0; kc < g.kernel; ++kc) {
                                    double xv = x[(ch * g.height + r * g.stride + kr) * g.width +
                                                  c * g.stride + kc];
                                    if (layer.kind() == LayerKind::maxpool)
                                        acc = std::max(acc, xv);
                                    else
                                        acc += xv;
                                }
                            if (layer.kind() == LayerKind::avgpool) acc /= win;
                            out[e * layer.out_dim() + (ch * oh + r) * ow + c] =
                                activate(layer.activation(), acc);
                        }
            }
            break;
        }
    }
    return Tensor({n, layer.out_dim()}, std::move(out));
}

ActivationChain forward(const Network& net, const Tensor& batch) {
    if (batch.rank() != 2)
        throw ShapeError("forward: batch must be 2-D (examples x features)");
    if (batch.cols() != net.in_dim())
        throw ShapeError("forward: batch feature dim " + std::to_string(batch.cols()) +
                         " != network input dim " + std::to_string(net.in_dim()));
    ActivationChain chain;
    chain.stages.reserve(net.depth() + 1);
    chain.stages.push_back(batch);
    for (std::size_t k = 0; k < net.depth(); ++k) {
        try {
            chain.stages.push_back(apply_layer(net.layers()[k], chain.stages.back()));
        } catch (const ShapeError& e) {
            throw ShapeError("layer " + std::to_string(k) + ": " + e.what());
        }
    }
    try {
        chain.head_logits = apply_layer(net.head(), chain.stages.back());
    } catch (const ShapeError& e) {
        throw ShapeError(std::string("head: ") + e.what());
    }
    return chain;
}

namespace {

nlohmann::json layer_to_json(const Layer& layer) {
    nlohmann::json j;
    j["kind"] = to_string(layer.kind());
    j["activation"] = to_string(layer.activation());
    j["in_dim"] = layer.in_dim();
    j["out_dim"] = layer.out_dim();
    j["weights"] = layer.weights().data();
    if (layer.kind() != LayerKind::dense) {
        const auto& g = layer.geometry();
        j["geometry"] = {{"in_channels", g.in_channels}, {"out_channels", g.out_channels},
                         {"height", g.height},           {"width", g.width},
                         {"kernel", g.kernel},           {"stride", g.stride}};
    }
    return j;
}

Layer layer_from_json(const nlohmann::json& j) {
    LayerKind kind = layer_kind_from_string(j.at("kind").get<std::string>());
    Activation act = activation_from_string(j.at("activation").get<std::string>());
    std::size_t in_dim = j.at("in_dim").get<std::size_t>();
    std::size_t out_dim = j.at("out_dim").get<std::size_t>();
    auto weights = j.value("weights", std::vector<double>{});

    if (kind == LayerKind::dense)
        return Layer::dense(in_dim, out_dim, Tensor::matrix(out_dim, in_dim, std::move(weights)), act);

    const auto& gj = j.at("geometry");
    ConvGeometry g;
    g.in_channels = gj.at("in_channels").get<std::size_t>();
    g.out_channels = gj.value("out_channels", g.in_channels);
    g.height = gj.at("height").get<std::size_t>();
    g.width = gj.at("width").get<std::size_t>();
    g.kernel = gj.at("kernel").get<std::size_t>();
    g.stride = gj.at("stride").get<std::size_t>();

    if (kind == LayerKind::conv2d)
        return Layer::conv2d(
            g, Tensor({g.out_channels, g.in_channels, g.kernel, g.kernel}, std::move(weights)), act);
    if (kind == LayerKind::maxpool) return Layer::maxpool(g);
    return Layer::avgpool(g);
}

}  // namespace

std::string network_to_json(const Network& net, int indent) {
    nlohmann::json j;
    j["layers"] = nlohmann::json::array();
    for (const auto& l : net.layers()) j["layers"].push_back(layer_to_json(l));
    j["head"] = layer_to_json(net.head());
    return j.dump(indent);
}

Network network_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    std::vector<Layer> layers;
    for (const auto& lj : j.at("layers")) layers.push_back(layer_from_json(lj));
    return Network(std::move(layers), layer_from_json(j.at("head")));
}

}  // namespace infobound
