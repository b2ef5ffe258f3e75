#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace infobound {

/// Contingency table of non-negative integer counts over (X-bin, Y-bin).
class JointCounts {
public:
    JointCounts(std::size_t x_bins, std::size_t y_bins);

    // Builds the table from paired discrete codes, remapping distinct codes
    // to dense indices in first-appearance order.
    static JointCounts from_codes(std::span<const std::uint64_t> x_codes,
                                  std::span<const std::uint64_t> y_codes);

    void add(std::size_t x, std::size_t y, std::uint64_t count = 1);

    std::uint64_t at(std::size_t x, std::size_t y) const { return counts_[x * y_bins_ + y]; }
    std::uint64_t total() const { return total_; }
    std::size_t x_bins() const { return x_bins_; }
    std::size_t y_bins() const { return y_bins_; }

private:
    std::size_t x_bins_, y_bins_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

// Plug-in mutual information in nats: sum of p_xy ln(p_xy / (p_x p_y)).
// Non-negative; tiny negative rounding residue is clamped to 0.
double plugin_mi(const JointCounts& counts);

}  // namespace infobound
