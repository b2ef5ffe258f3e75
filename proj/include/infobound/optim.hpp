#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "infobound/backprop.hpp"
#include "infobound/loss.hpp"
#include "infobound/network.hpp"
#include "infobound/schedule.hpp"
#include "infobound/tensor.hpp"

namespace infobound {

struct NoisySgdConfig {
    std::size_t batch_size = 1;
    std::uint64_t iterations = 0;
    Schedule head_schedule = Schedule::inverse_square(0.04);
    // Per-layer learning rates default to the head schedule when empty.
    std::vector<Schedule> layer_schedules;
    std::uint64_t seed = 0;
    bool seed_set = false;

    void validate(std::size_t depth) const;
};

struct TraceRow {
    std::uint64_t t = 0;
    double alpha = 0.0;
    double sigma = 0.0;
    double head_grad_sq = 0.0;       // ||mean mini-batch head gradient||^2
    double budget_increment = 0.0;   // nats absorbed this step (empirical moment)
    double budget_total = 0.0;
};

/// Per-iteration record of the noisy-SGD run plus the running
/// mutual-information budget. All information quantities are in nats.
struct TrainTrace {
    std::vector<TraceRow> rows;
    double m_hat_max = 0.0;    // running max of head_grad_sq
    double m_hat_mean = 0.0;   // running mean of head_grad_sq
    double mi_budget_total = 0.0;

    // Budget recomputed from the recorded (alpha, sigma) with a supplied
    // squared-moment bound M^2, e.g. m_hat_max or a user constant.
    double budget_total_with(double m_squared, std::size_t head_dim) const;

    // Sum over recorded rows of alpha_t^2 / sigma_t^2.
    double lr_noise_ratio_sum() const;

    // CSV: t,alpha,sigma,head_grad_sq,budget_increment,budget_total
    std::string to_csv() const;
};

// Noise-free step: every weight w <- w - lr * g. Returns a new network.
Network sgd_step(const Network& net, const GradientSet& grads, double lr);

// One noisy update: w <- w - lr * g + noise, noise ~ N(0, sigma^2 I) drawn
// from the stream keyed by (seed, t, layer). sigma = 0 disables the noise
// term (test hook); the head uses layer index 0, hidden layer k uses k + 1.
Network noisy_sgd_step(const Network& net, const GradientSet& grads,
                       const std::vector<double>& lrs, const std::vector<double>& noise_scales,
                       std::uint64_t seed, std::uint64_t t);

// Information the head can absorb in one step: (d/2) ln(1 + a^2 M^2 / (d s^2)).
double mi_budget_increment(double alpha, double sigma, std::size_t head_dim, double m_squared);

// The looser cap a^2 M^2 / (2 s^2) that dominates the increment.
double mi_budget_cap(double alpha, double sigma, double m_squared);

struct Dataset;  // datasets.hpp

// Runs T noisy mini-batch steps (sampling with replacement) and records the
// trace. Deterministic in (net, dataset, config).
std::pair<Network, TrainTrace> train(const Network& net, const Dataset& data,
                                     const NoisySgdConfig& config, const LossEvaluator& loss);

// Fresh network with the same shape, weights ~ N(0, 1/fan_in), seeded.
Network init_network_like(const Network& net, std::uint64_t seed);

}  // namespace infobound
