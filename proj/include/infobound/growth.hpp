#pragma once

#include <cstdint>
#include <functional>

namespace infobound {

struct GrowthBound {
    double value = 0.0;
    double log_value = 0.0;  // natural log, safe for large n/d
};

// Sauer's lemma branches: 2^n when n <= d, (e n / d)^d when n > d.
GrowthBound sauer_growth_bound(std::uint64_t n, std::uint64_t vc_dim);

// Number of distinct label patterns a finite class realizes on a point set.
// labels(h, i) gives hypothesis h's label on point i.
std::uint64_t exact_dichotomy_count(std::size_t num_points, std::size_t num_hypotheses,
                                    const std::function<int(std::size_t, std::size_t)>& labels);

}  // namespace infobound
