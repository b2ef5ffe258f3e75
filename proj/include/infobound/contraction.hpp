#pragma once

#include <optional>

#include "infobound/network.hpp"
#include "infobound/tensor.hpp"

namespace infobound {

inline constexpr double kDefaultRankTol = 1e-10;

struct RankResult {
    std::size_t rank = 0;
    bool is_contraction = false;
};

// Dense (out_dim x in_dim) matrix of the layer's linear map, ignoring the
// activation. Dense layers return their weights; conv2d layers materialize
// the flattened convolution operator.
Tensor flatten_operator(const Layer& layer);

// Numerical rank of the linear map: singular values above tol * sigma_max.
// is_contraction reports rank < in_dim. Pooling layers have no weight matrix
// and are rejected; they are contraction layers by construction, see
// is_contraction_layer.
RankResult weight_rank(const Layer& layer, double tol = kDefaultRankTol);

// Pooling: always true. Dense/conv2d: the rank test.
bool is_contraction_layer(const Layer& layer, double tol = kDefaultRankTol);

// If the dense layer's weights are rank deficient, returns x' = x + alpha
// with alpha a unit vector in the numerical right null space, so the layer
// maps x and x' to the same output. Full-rank layers return nothing.
std::optional<Tensor> collision_witness(const Layer& layer, const Tensor& x,
                                        double tol = kDefaultRankTol);

}  // namespace infobound
