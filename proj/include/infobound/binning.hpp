#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "infobound/tensor.hpp"

namespace infobound {

enum class RangePolicy { observed, fixed };

struct BinningSpec {
    std::size_t bins_per_dim = 8;
    RangePolicy range_policy = RangePolicy::observed;
    double fixed_lo = 0.0;  // used when range_policy == fixed
    double fixed_hi = 1.0;
};

// Equal-width binning per dimension, then a mixed-radix code per example.
// The top bin is right-closed (the max lands in bin b-1); a constant
// dimension maps everything to bin 0. Deterministic and order-invariant.
std::vector<std::uint64_t> bin_features(const Tensor& stage, const BinningSpec& spec);

}  // namespace infobound
