#include "infobound/joint_counts.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace infobound {

JointCounts::JointCounts(std::size_t x_bins, std::size_t y_bins)
    : x_bins_(x_bins), y_bins_(y_bins), counts_(x_bins * y_bins, 0) {
    if (x_bins == 0 || y_bins == 0) throw std::invalid_argument("JointCounts: empty axis");
}

JointCounts JointCounts::from_codes(std::span<const std::uint64_t> x_codes,
                                    std::span<const std::uint64_t> y_codes) {
    if (x_codes.size() != y_codes.size() || x_codes.empty())
        throw std::invalid_argument("JointCounts: need matching nonempty code sequences");

    std::unordered_map<std::uint64_t, std::size_t> xmap, ymap;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(x_codes.size());
    for (std::size_t i = 0; i < x_codes.size(); ++i) {
        auto xi = xmap.emplace(x_codes[i], xmap.size()).first->second;
        auto yi = ymap.emplace(y_codes[i], ymap.size()).first->second;
        pairs.emplace_back(xi, yi);
    }
    JointCounts out(xmap.size(), ymap.size());
    for (auto [x, y] : pairs) out.add(x, y);
    return out;
}

void JointCounts::add(std::size_t x, std::size_t y, std::uint64_t count) {
    if (x >= x_bins_ || y >= y_bins_) throw std::out_of_range("JointCounts::add");
    counts_[x * y_bins_ + y] += count;
    total_ += count;
}

double plugin_mi(const JointCounts& counts) {
    if (counts.total() == 0) throw std::invalid_argument("plugin_mi: empty table");
    const double n = static_cast<double>(counts.total());

    std::vector<double> px(counts.x_bins(), 0.0), py(counts.y_bins(), 0.0);
    for (std::size_t x = 0; x < counts.x_bins(); ++x)
        for (std::size_t y = 0; y < counts.y_bins(); ++y) {
            double p = static_cast<double>(counts.at(x, y)) / n;
            px[x] += p;
            py[y] += p;
        }

    double mi = 0.0;
    for (std::size_t x = 0; x < counts.x_bins(); ++x)
        for (std::size_t y = 0; y < counts.y_bins(); ++y) {
            if (counts.at(x, y) == 0) continue;
            double p = static_cast<double>(counts.at(x, y)) / n;
            mi += p * std::log(p / (px[x] * py[y]));
        }
    return mi < 0.0 ? 0.0 : mi;
}

}  // namespace infobound
