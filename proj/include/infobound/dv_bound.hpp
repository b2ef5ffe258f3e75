#pragma once

#include <functional>
#include <span>
#include <vector>

#include "infobound/pmf.hpp"

namespace infobound {

using TestFunction = std::function<double(double)>;

// Donsker-Varadhan lower bound on D(P||Q) from samples:
//   max over F of  mean_P[F] - ln mean_Q[exp F]
// evaluated with a max-shifted log-sum-exp. The family is a finite list of
// user-supplied test functions; no learned critics.
double dv_lower_bound(std::span<const double> samples_p, std::span<const double> samples_q,
                      const std::vector<TestFunction>& family);

// Same objective with exact expectations over enumerated PMFs on a shared
// alphabet {0..k-1}; test functions receive the symbol index. Never exceeds
// discrete_kl(p, q).
double dv_lower_bound_exact(const DiscretePmf& p, const DiscretePmf& q,
                            const std::vector<std::function<double(std::size_t)>>& family);

}  // namespace infobound
