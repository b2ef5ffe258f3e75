#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "infobound/tensor.hpp"

namespace infobound {

enum class LayerKind { dense, conv2d, maxpool, avgpool };
enum class Activation { relu, tanh, sigmoid, identity };

std::string to_string(LayerKind kind);
std::string to_string(Activation act);
LayerKind layer_kind_from_string(const std::string& s);
Activation activation_from_string(const std::string& s);

// Spatial metadata for conv2d and pooling layers. `kernel` doubles as the
// pooling window; `out_channels` is ignored by pooling (output channels equal
// input channels).
struct ConvGeometry {
    std::size_t in_channels = 1;
    std::size_t out_channels = 1;
    std::size_t height = 0;
    std::size_t width = 0;
    std::size_t kernel = 1;
    std::size_t stride = 1;

    std::size_t out_height() const { return (height - kernel) / stride + 1; }
    std::size_t out_width() const { return (width - kernel) / stride + 1; }
    bool operator==(const ConvGeometry&) const = default;
};

// One feature map w_k with its activation. Biases are not modelled
// separately: a bias is folded into the weights by augmenting the input with
// a constant-one homogeneous coordinate.
class Layer {
public:
    static Layer dense(std::size_t in_dim, std::size_t out_dim, Tensor weights,
                       Activation act = Activation::identity);
    static Layer conv2d(ConvGeometry geom, Tensor kernels, Activation act = Activation::identity);
    static Layer maxpool(ConvGeometry geom);
    static Layer avgpool(ConvGeometry geom);

    LayerKind kind() const { return kind_; }
    Activation activation() const { return activation_; }
    std::size_t in_dim() const { return in_dim_; }
    std::size_t out_dim() const { return out_dim_; }
    const Tensor& weights() const { return weights_; }
    const ConvGeometry& geometry() const { return geom_; }
    bool has_weights() const { return weights_.size() > 0; }

    // Replaces the weights, keeping kind/dims; shape must match.
    Layer with_weights(Tensor weights) const;

    bool operator==(const Layer&) const = default;

private:
    Layer() = default;
    LayerKind kind_ = LayerKind::dense;
    Activation activation_ = Activation::identity;
    std::size_t in_dim_ = 0;
    std::size_t out_dim_ = 0;
    Tensor weights_;
    ConvGeometry geom_;
};

/// Ordered stack of L hidden layers plus a dense classifier head.
/// Consecutive dimensions must chain; depth() counts hidden layers only.
class Network {
public:
    Network(std::vector<Layer> layers, Layer head);

    const std::vector<Layer>& layers() const { return layers_; }
    const Layer& head() const { return head_; }
    std::size_t depth() const { return layers_.size(); }
    std::size_t in_dim() const { return layers_.empty() ? head_.in_dim() : layers_.front().in_dim(); }
    std::size_t out_dim() const { return head_.out_dim(); }

    Network with_layer_weights(std::size_t k, Tensor weights) const;
    Network with_head_weights(Tensor weights) const;

    bool operator==(const Network&) const = default;

private:
    std::vector<Layer> layers_;
    Layer head_;
};

/// T_0..T_L plus the head logits, one row per example.
struct ActivationChain {
    std::vector<Tensor> stages;   // stages[0] is the raw input batch
    Tensor head_logits;
};

// Applies a single layer to a batch (n x in_dim). Pure.
Tensor apply_layer(const Layer& layer, const Tensor& batch);

// Full forward pass; the error message names the offending layer index on a
// dimension mismatch. Pure.
ActivationChain forward(const Network& net, const Tensor& batch);

// JSON schema: {"layers": [{kind, in_dim, out_dim, activation, weights,
// geometry?}, ...], "head": {...}}. Round-trips deterministically.
std::string network_to_json(const Network& net, int indent = 2);
Network network_from_json(const std::string& json_text);

}  // namespace infobound
