#include "infobound/binning.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "infobound/errors.hpp"

namespace infobound {

std::vector<std::uint64_t> bin_features(const Tensor& stage, const BinningSpec& spec) {
    if (spec.bins_per_dim < 2) throw std::invalid_argument("bin_features: need bins_per_dim >= 2");
    if (stage.rank() != 2) throw ShapeError("bin_features: stage must be 2-D");
    const std::size_t n = stage.rows(), d = stage.cols();
    const std::size_t b = spec.bins_per_dim;

    // Guard the mixed-radix code against 64-bit overflow.
    double max_code = 1.0;
    for (std::size_t k = 0; k < d; ++k) max_code *= static_cast<double>(b);
    if (max_code > 9.0e18)
        throw std::invalid_argument("bin_features: bins_per_dim^dims exceeds the 64-bit code space");

    std::vector<double> lo(d), hi(d);
    if (spec.range_policy == RangePolicy::fixed) {
        if (!(spec.fixed_hi > spec.fixed_lo))
            throw std::invalid_argument("bin_features: fixed range must have hi > lo");
        std::fill(lo.begin(), lo.end(), spec.fixed_lo);
        std::fill(hi.begin(), hi.end(), spec.fixed_hi);
    } else {
        std::fill(lo.begin(), lo.end(), std::numeric_limits<double>::infinity());
        std::fill(hi.begin(), hi.end(), -std::numeric_limits<double>::infinity());
        for (std::size_t e = 0; e < n; ++e)
            for (std::size_t k = 0; k < d; ++k) {
                double v = stage.at2(e, k);
                lo[k] = std::min(lo[k], v);
                hi[k] = std::max(hi[k], v);
            }
    }

    std::vector<std::uint64_t> codes(n, 0);
    for (std::size_t e = 0; e < n; ++e) {
        std::uint64_t code = 0;
        for (std::size_t k = 0; k < d; ++k) {
            std::uint64_t bin = 0;
            double width = hi[k] - lo[k];
            if (width > 0.0) {
                double frac = (stage.at2(e, k) - lo[k]) / width;
                bin = std::min<std::uint64_t>(
                    static_cast<std::uint64_t>(std::clamp(frac, 0.0, 1.0) * static_cast<double>(b)),
                    b - 1);
            }
            code = code * b + bin;
        }
        codes[e] = code;
    }
    return codes;
}

}  // namespace infobound
