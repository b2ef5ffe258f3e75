#pragma once

#include <vector>

namespace infobound {

/// Probability mass function over a finite alphabet. Entries are >= 0 and
/// sum to 1 within 1e-12.
class DiscretePmf {
public:
    explicit DiscretePmf(std::vector<double> probabilities);

    const std::vector<double>& probs() const { return probs_; }
    std::size_t support_size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }

private:
    std::vector<double> probs_;
};

// Shannon entropy in nats, with 0 ln 0 = 0.
double discrete_entropy(const DiscretePmf& p);

// Exact KL divergence in nats; requires q[i] > 0 wherever p[i] > 0.
double discrete_kl(const DiscretePmf& p, const DiscretePmf& q);

}  // namespace infobound
