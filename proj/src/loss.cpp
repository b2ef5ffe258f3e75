#include "infobound/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "infobound/errors.hpp"

namespace infobound {

LossEvaluator LossEvaluator::clipped_cross_entropy(double lo, double hi) {
    if (!(hi > lo)) throw std::invalid_argument("clipped_cross_entropy: need hi > lo");
    if (lo < 0.0) throw std::invalid_argument("clipped_cross_entropy: lo must be >= 0");
    return {LossKind::clipped_cross_entropy, lo, hi};
}

std::size_t argmax_lowest(std::span<const double> values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    return best;
}

double raw_cross_entropy(std::span<const double> head_output, int label) {
    double m = *std::max_element(head_output.begin(), head_output.end());
    double sum = 0.0;
    for (double v : head_output) sum += std::exp(v - m);
    double log_p = head_output[static_cast<std::size_t>(label)] - m - std::log(sum);
    return -log_p;
}

double evaluate_loss(const LossEvaluator& loss, std::span<const double> head_output, int label) {
    if (head_output.empty()) throw ShapeError("evaluate_loss: empty head output");
    if (label < 0 || static_cast<std::size_t>(label) >= head_output.size())
        throw ShapeError("evaluate_loss: label out of range for head output");

    switch (loss.kind) {
        case LossKind::zero_one:
            return argmax_lowest(head_output) == static_cast<std::size_t>(label) ? 0.0 : 1.0;
        case LossKind::clipped_cross_entropy:
            return std::clamp(raw_cross_entropy(head_output, label), loss.lo, loss.hi);
    }
    return loss.lo;
}

}  // namespace infobound
