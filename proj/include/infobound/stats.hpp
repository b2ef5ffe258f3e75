#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace infobound {

// Welford accumulator; merging shards in index order keeps multi-threaded
// aggregation deterministic for a fixed shard count.
class StreamingMoments {
public:
    void push(double x) {
        ++count_;
        double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }

    std::size_t count() const { return count_; }
    double mean() const { return mean_; }
    double sample_variance() const {
        return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
    }
    double std_error() const {
        return count_ > 1 ? std::sqrt(sample_variance() / static_cast<double>(count_)) : 0.0;
    }

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct GapEstimate {
    double mean_gap = 0.0;
    double std_error = 0.0;
    bool std_error_defined = false;  // false when replications == 1
    std::size_t replications = 0;
    std::vector<double> per_replication;

    static GapEstimate from_values(const std::vector<double>& values);
};

}  // namespace infobound
