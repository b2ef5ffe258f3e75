#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace infobound {

/// Dense row-major array of doubles with an explicit shape.
///
/// Invariants enforced at construction: data length equals the product of the
/// shape entries, every shape entry is positive, and every element is finite.
class Tensor {
public:
    Tensor() = default;
    Tensor(std::vector<std::size_t> shape, std::vector<double> data);

    // Zero-filled tensor of the given shape.
    static Tensor zeros(std::vector<std::size_t> shape);

    // 1-D and 2-D conveniences.
    static Tensor vector(std::vector<double> values);
    static Tensor matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    const std::vector<std::size_t>& shape() const { return shape_; }
    const std::vector<double>& data() const { return data_; }
    std::size_t size() const { return data_.size(); }
    std::size_t rank() const { return shape_.size(); }

    std::size_t rows() const;
    std::size_t cols() const;

    double operator()(std::size_t i) const { return data_[i]; }
    double at2(std::size_t i, std::size_t j) const { return data_[i * cols() + j]; }

    // Row view of a 2-D tensor.
    std::span<const double> row(std::size_t i) const;

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
    bool operator==(const Tensor& other) const = default;

private:
    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

std::size_t shape_product(const std::vector<std::size_t>& shape);

// Throws ShapeError if any entry is NaN/Inf; `what` names the producing operation.
void require_finite(const std::vector<double>& values, const char* what);

}  // namespace infobound
