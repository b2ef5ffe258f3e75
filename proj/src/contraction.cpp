#include "infobound/contraction.hpp"

#include "infobound/errors.hpp"
#include "infobound/linalg.hpp"

namespace infobound {

Tensor flatten_operator(const Layer& layer) {
    if (layer.kind() == LayerKind::dense) return layer.weights();
    if (layer.kind() != LayerKind::conv2d)
        throw InapplicableLayerError("flatten_operator: pooling layers have no weight matrix");

    // Columns of the operator are the conv applied to basis vectors. The
    // activation is bypassed by building a copy with identity activation.
    Layer linear = Layer::conv2d(layer.geometry(), layer.weights(), Activation::identity);
    const std::size_t in = layer.in_dim(), out = layer.out_dim();
    std::vector<double> op(out * in, 0.0);
    for (std::size_t j = 0; j < in; ++j) {
        std::vector<double> basis(in, 0.0);
        basis[j] = 1.0;
        Tensor col = apply_layer(linear, Tensor({1, in}, std::move(basis)));
        for (std::size_t i = 0; i < out; ++i) op[i * in + j] = col.data()[i];
    }
    return Tensor({out, in}, std::move(op));
}

RankResult weight_rank(const Layer& layer, double tol) {
    if (layer.kind() == LayerKind::maxpool || layer.kind() == LayerKind::avgpool)
        throw InapplicableLayerError(
            "weight_rank: pooling layers are contraction layers by construction");
    if (!(tol > 0.0)) throw std::invalid_argument("weight_rank: tol must be positive");

    Tensor op = flatten_operator(layer);
    SvdResult svd = jacobi_svd(op.data(), op.rows(), op.cols());
    RankResult r;
    r.rank = numerical_rank(svd, tol);
    r.is_contraction = r.rank < layer.in_dim();
    return r;
}

bool is_contraction_layer(const Layer& layer, double tol) {
    if (layer.kind() == LayerKind::maxpool || layer.kind() == LayerKind::avgpool) return true;
    return weight_rank(layer, tol).is_contraction;
}

std::optional<Tensor> collision_witness(const Layer& layer, const Tensor& x, double tol) {
    if (layer.kind() != LayerKind::dense)
        throw InapplicableLayerError("collision_witness: only dense layers are supported");
    if (x.size() != layer.in_dim()) throw ShapeError("collision_witness: x dim != layer in_dim");

    const Tensor& w = layer.weights();
    SvdResult svd = jacobi_svd(w.data(), w.rows(), w.cols());
    std::size_t rank = numerical_rank(svd, tol);
    if (rank >= layer.in_dim()) return std::nullopt;

    // Smallest singular value's right vector spans (part of) the null space;
    // it has unit norm, so x' != x is guaranteed.
    std::size_t n = layer.in_dim();
    std::vector<double> xp(n);
    for (std::size_t i = 0; i < n; ++i) xp[i] = x.data()[i] + svd.right_vector_entry(i, n - 1);
    return Tensor(x.shape(), std::move(xp));
}

}  // namespace infobound
