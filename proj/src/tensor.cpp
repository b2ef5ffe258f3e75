#include "infobound/tensor.hpp"

#include <cmath>

#include "infobound/errors.hpp"

namespace infobound {

std::size_t shape_product(const std::vector<std::size_t>& shape) {
    std::size_t p = 1;
    for (std::size_t s : shape) p *= s;
    return p;
}

void require_finite(const std::vector<double>& values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw ShapeError(std::string(what) + ": non-finite value");
        }
    }
}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    for (std::size_t s : shape_) {
        if (s == 0) throw ShapeError("Tensor: zero shape entry");
    }
    if (shape_product(shape_) != data_.size()) {
        throw ShapeError("Tensor: data length " + std::to_string(data_.size()) +
                         " does not match shape product " +
                         std::to_string(shape_product(shape_)));
    }
    require_finite(data_, "Tensor");
}

Tensor Tensor::zeros(std::vector<std::size_t> shape) {
    std::vector<double> data(shape_product(shape), 0.0);
    return Tensor(std::move(shape), std::move(data));
}

Tensor Tensor::vector(std::vector<double> values) {
    std::size_t n = values.size();
    return Tensor({n}, std::move(values));
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols, std::vector<double> values) {
    return Tensor({rows, cols}, std::move(values));
}

std::size_t Tensor::rows() const {
    if (shape_.size() != 2) throw ShapeError("Tensor::rows: not 2-D");
    return shape_[0];
}

std::size_t Tensor::cols() const {
    if (shape_.size() != 2) throw ShapeError("Tensor::cols: not 2-D");
    return shape_[1];
}

std::span<const double> Tensor::row(std::size_t i) const {
    return std::span<const double>(data_.data() + i * cols(), cols());
}

}  // namespace infobound
