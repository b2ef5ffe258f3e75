#include "infobound/growth.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <vector>

namespace infobound {

GrowthBound sauer_growth_bound(std::uint64_t n, std::uint64_t vc_dim) {
    if (vc_dim < 1) throw std::invalid_argument("sauer_growth_bound: vc_dim must be >= 1");
    GrowthBound out;
    if (n <= vc_dim) {
        out.log_value = static_cast<double>(n) * std::numbers::ln2;
        out.value = n < 63 ? static_cast<double>(std::uint64_t{1} << n) : std::exp(out.log_value);
    } else {
        double nd = static_cast<double>(n), dd = static_cast<double>(vc_dim);
        out.log_value = dd * std::log(std::numbers::e * nd / dd);
        out.value = std::pow(std::numbers::e * nd / dd, dd);
    }
    return out;
}

std::uint64_t exact_dichotomy_count(std::size_t num_points, std::size_t num_hypotheses,
                                    const std::function<int(std::size_t, std::size_t)>& labels) {
    if (num_points == 0) return num_hypotheses > 0 ? 1 : 0;
    std::set<std::vector<int>> patterns;
    std::vector<int> pattern(num_points);
    for (std::size_t h = 0; h < num_hypotheses; ++h) {
        for (std::size_t i = 0; i < num_points; ++i) pattern[i] = labels(h, i);
        patterns.insert(pattern);
    }
    return patterns.size();
}

}  // namespace infobound
