#include "infobound/dv_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace infobound {

namespace {

// ln mean(exp(values)) without overflow.
double log_mean_exp(const std::vector<double>& values) {
    double m = *std::max_element(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += std::exp(v - m);
    return m + std::log(sum / static_cast<double>(values.size()));
}

}  // namespace

double dv_lower_bound(std::span<const double> samples_p, std::span<const double> samples_q,
                      const std::vector<TestFunction>& family) {
    if (samples_p.empty() || samples_q.empty())
        throw std::invalid_argument("dv_lower_bound: empty sample set");
    if (family.empty()) throw std::invalid_argument("dv_lower_bound: empty family");

    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> fq(samples_q.size());
    for (const auto& f : family) {
        double mean_p = 0.0;
        for (double x : samples_p) {
            double v = f(x);
            if (!std::isfinite(v))
                throw std::invalid_argument("dv_lower_bound: test function not finite on samples");
            mean_p += v;
        }
        mean_p /= static_cast<double>(samples_p.size());

        for (std::size_t i = 0; i < samples_q.size(); ++i) {
            fq[i] = f(samples_q[i]);
            if (!std::isfinite(fq[i]))
                throw std::invalid_argument("dv_lower_bound: test function not finite on samples");
        }
        best = std::max(best, mean_p - log_mean_exp(fq));
    }
    return best;
}

double dv_lower_bound_exact(const DiscretePmf& p, const DiscretePmf& q,
                            const std::vector<std::function<double(std::size_t)>>& family) {
    if (p.support_size() != q.support_size())
        throw std::invalid_argument("dv_lower_bound_exact: support size mismatch");
    if (family.empty()) throw std::invalid_argument("dv_lower_bound_exact: empty family");

    double best = -std::numeric_limits<double>::infinity();
    for (const auto& f : family) {
        double mean_p = 0.0;
        double shift = -std::numeric_limits<double>::infinity();
        std::vector<double> fv(p.support_size());
        for (std::size_t i = 0; i < p.support_size(); ++i) {
            fv[i] = f(i);
            mean_p += p[i] * fv[i];
            if (q[i] > 0.0) shift = std::max(shift, fv[i]);
        }
        double eq = 0.0;
        for (std::size_t i = 0; i < q.support_size(); ++i)
            if (q[i] > 0.0) eq += q[i] * std::exp(fv[i] - shift);
        best = std::max(best, mean_p - (shift + std::log(eq)));
    }
    return best;
}

}  // namespace infobound
