#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "infobound/schedule.hpp"

namespace infobound {

enum class BoundKind { main, stability, noisy_sgd, binary, excess, high_prob };

std::string to_string(BoundKind kind);

// Inputs shared by every calculator. All information quantities are in nats.
struct BoundInputs {
    std::uint64_t depth = 0;          // L, number of contraction layers
    double eta = 1.0;                 // in (0, 1]
    double sigma = 0.5;               // sub-Gaussian constant of the loss
    std::uint64_t n = 1;              // training sample size
    double mi_nats = 0.0;             // I(S, W) >= 0

    // noisy_sgd only
    std::optional<double> m_bound;            // sqrt of the second-moment bound M^2... stored as M
    std::optional<Schedule> schedule;
    std::optional<std::uint64_t> iterations;  // empty = T = infinity

    // binary only
    std::optional<std::uint64_t> vc_dim;

    std::string eta_source = "user";  // user | chain | tinyworld
    std::string mi_source = "user";   // user | tinyworld | budget | entropy_cap

    void validate() const;
};

struct BoundReport {
    BoundKind kind = BoundKind::main;
    double value = 0.0;
    double exp_factor = 1.0;   // eta^(L/2)
    double sqrt_factor = 0.0;  // the sqrt(...) term; value == exp_factor * sqrt_factor
    BoundInputs inputs;

    std::string to_json(int indent = 2) const;
};

// Theorem 2: eta^(L/2) * sqrt(2 sigma^2 I(S,W) / n).
BoundReport main_bound(const BoundInputs& inputs);

// Theorem 3: the replace-one hypothesis stability rate; same formula.
BoundReport stability_rate(const BoundInputs& inputs);

// Theorem 4: eta^(L/2) * sqrt(sigma^2/n * sum_i M^2 alpha_i^2 / sigma_i^2).
// iterations empty means T = infinity, closed under inverse_square via
// zeta(2) = pi^2/6; T = infinity with a constant schedule is an error.
BoundReport noisy_sgd_bound(const BoundInputs& inputs);

// Theorem 6 with Sauer's lemma branches; continuous at n = vc_dim.
BoundReport binary_bound(const BoundInputs& inputs);

// Eq. 23: the same value read as a bound on E[R(W)] - R*.
double excess_risk_bound(const BoundReport& report);

// Eq. 24: value / delta, holding with probability >= 1 - delta.
double high_prob_bound(const BoundReport& report, double delta);

// Hoeffding constant for a loss bounded in [lo, hi]: (hi - lo) / 2.
double subgaussian_sigma(double lo, double hi);

BoundInputs bound_inputs_from_json(const std::string& json_text);
std::string bound_report_csv_header();
std::string bound_report_csv_row(const BoundReport& report);

}  // namespace infobound
