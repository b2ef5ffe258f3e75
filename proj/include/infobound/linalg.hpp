#pragma once

#include <cstddef>
#include <vector>

namespace infobound {

// Singular value decomposition of a dense row-major m x n matrix, computed by
// one-sided Jacobi rotations. Only the pieces needed for rank analysis are
// returned: singular values in descending order and the matching right
// singular vectors (columns of V, stored row-major n x n).
struct SvdResult {
    std::vector<double> singular_values;   // length min-free: n values, zeros padded
    std::vector<double> right_vectors;     // n x n, column j pairs with singular_values[j]
    std::size_t n = 0;

    double right_vector_entry(std::size_t row, std::size_t col) const {
        return right_vectors[row * n + col];
    }
};

SvdResult jacobi_svd(const std::vector<double>& a, std::size_t m, std::size_t n);

// Count of singular values above tol * sigma_max.
std::size_t numerical_rank(const SvdResult& svd, double tol);

}  // namespace infobound
