#pragma once

#include <vector>

#include "infobound/loss.hpp"
#include "infobound/network.hpp"
#include "infobound/tensor.hpp"

namespace infobound {

// Gradients of the mean batch loss, one tensor per trainable layer plus the
// head. Pooling entries are default (empty) tensors.
struct GradientSet {
    std::vector<Tensor> layers;
    Tensor head;
};

// Backpropagation from an upstream gradient at the head logits
// (d mean-loss / d logits, shape n x out_dim). Exposed so tests can drive
// custom losses through the same path.
GradientSet backward_from_logit_grads(const Network& net, const ActivationChain& chain,
                                      const Tensor& logit_grads);

// Gradient of the mean clipped-cross-entropy batch loss. Examples whose raw
// loss falls outside the clip range contribute zero gradient (flat region).
// zero_one loss is evaluation-only and is rejected.
GradientSet backward(const Network& net, const Tensor& batch, const std::vector<int>& labels,
                     const LossEvaluator& loss);

}  // namespace infobound
