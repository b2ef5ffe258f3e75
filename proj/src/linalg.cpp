#include "infobound/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace infobound {

SvdResult jacobi_svd(const std::vector<double>& a, std::size_t m, std::size_t n) {
    if (a.size() != m * n) throw std::invalid_argument("jacobi_svd: size mismatch");

    // Work on columns: b[j] is the j-th column of A, v accumulates rotations.
    std::vector<std::vector<double>> b(n, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) b[j][i] = a[i * n + j];

    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) v[j][j] = 1.0;

    const double eps = 1e-15;
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = std::inner_product(b[p].begin(), b[p].end(), b[p].begin(), 0.0);
                double aqq = std::inner_product(b[q].begin(), b[q].end(), b[q].begin(), 0.0);
                double apq = std::inner_product(b[p].begin(), b[p].end(), b[q].begin(), 0.0);
                if (std::abs(apq) <= eps * std::sqrt(app * aqq) || apq == 0.0) continue;
                rotated = true;

                double zeta = (aqq - app) / (2.0 * apq);
                double t = std::copysign(1.0, zeta) /
                           (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double cs = 1.0 / std::sqrt(1.0 + t * t);
                double sn = cs * t;

                for (std::size_t i = 0; i < m; ++i) {
                    double bp = b[p][i];
                    b[p][i] = cs * bp - sn * b[q][i];
                    b[q][i] = sn * bp + cs * b[q][i];
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double vp = v[p][i];
                    v[p][i] = cs * vp - sn * v[q][i];
                    v[q][i] = sn * vp + cs * v[q][i];
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j)
        sigma[j] = std::sqrt(std::inner_product(b[j].begin(), b[j].end(), b[j].begin(), 0.0));

    // Sort descending, carrying the V columns along.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SvdResult out;
    out.n = n;
    out.singular_values.resize(n);
    out.right_vectors.assign(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        out.singular_values[j] = sigma[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.right_vectors[i * n + j] = v[order[j]][i];
    }
    return out;
}

std::size_t numerical_rank(const SvdResult& svd, double tol) {
    if (svd.singular_values.empty()) return 0;
    double cutoff = tol * svd.singular_values.front();
    std::size_t r = 0;
    for (double s : svd.singular_values)
        if (s > cutoff) ++r;
    return r;
}

}  // namespace infobound
