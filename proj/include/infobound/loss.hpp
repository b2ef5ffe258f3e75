#pragma once

#include <span>

namespace infobound {

enum class LossKind { zero_one, clipped_cross_entropy };

// Bounded per-example loss. Every evaluation lies in [lo, hi]; bounded losses
// are what makes the sub-Gaussian assumption certifiable downstream.
struct LossEvaluator {
    LossKind kind = LossKind::zero_one;
    double lo = 0.0;
    double hi = 1.0;

    static LossEvaluator zero_one() { return {LossKind::zero_one, 0.0, 1.0}; }
    static LossEvaluator clipped_cross_entropy(double lo = 0.0, double hi = 4.0);
};

// argmax with ties broken to the lowest index.
std::size_t argmax_lowest(std::span<const double> values);

// zero_one: 1 iff argmax(head_output) != label.
// clipped_cross_entropy: -log softmax(head_output)[label], clamped into [lo, hi].
double evaluate_loss(const LossEvaluator& loss, std::span<const double> head_output, int label);

// Per-example cross-entropy before clamping; used by the gradient path to
// detect the flat clip region.
double raw_cross_entropy(std::span<const double> head_output, int label);

}  // namespace infobound
