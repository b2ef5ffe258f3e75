#include "infobound/pmf.hpp"

#include <cmath>
#include <stdexcept>

namespace infobound {

DiscretePmf::DiscretePmf(std::vector<double> probabilities) : probs_(std::move(probabilities)) {
    if (probs_.empty()) throw std::invalid_argument("DiscretePmf: empty support");
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0)) throw std::invalid_argument("DiscretePmf: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("DiscretePmf: probabilities must sum to 1 (got " +
                                    std::to_string(sum) + ")");
}

double discrete_entropy(const DiscretePmf& p) {
    double h = 0.0;
    for (double pi : p.probs())
        if (pi > 0.0) h -= pi * std::log(pi);
    return h < 0.0 ? 0.0 : h;
}

double discrete_kl(const DiscretePmf& p, const DiscretePmf& q) {
    if (p.support_size() != q.support_size())
        throw std::invalid_argument("discrete_kl: support size mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < p.support_size(); ++i) {
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) throw std::invalid_argument("discrete_kl: P not dominated by Q");
        d += p[i] * std::log(p[i] / q[i]);
    }
    return d;
}

}  // namespace infobound
