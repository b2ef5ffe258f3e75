#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "infobound/binning.hpp"
#include "infobound/bounds.hpp"
#include "infobound/datasets.hpp"
#include "infobound/info_chain.hpp"
#include "infobound/loss.hpp"
#include "infobound/network.hpp"
#include "infobound/optim.hpp"
#include "infobound/stats.hpp"

namespace infobound {

// Runs fn(r) for r in [0, replications), sharded over `threads` workers.
// Results must be written into per-index slots; aggregation stays in index
// order so the outcome is thread-count independent up to shard merges.
void run_replications(std::size_t replications, std::size_t threads,
                      const std::function<void(std::size_t)>& fn);

// Monte Carlo estimate of E[R(W) - R_S(W)]: every replication draws a fresh
// training sample and held-out set, retrains from a fresh initialization with
// fresh noise, and evaluates the declared loss on both sides.
GapEstimate measure_gap(const Network& net_template, const DatasetSpec& dataset_spec,
                        const NoisySgdConfig& train_config, const LossEvaluator& loss,
                        std::size_t replications, std::size_t test_n = 256,
                        std::size_t threads = 1);

// Replace-one stability (Definition-5 average): retraining on S^i reuses the
// identical mini-batch and noise streams so only the replaced point differs.
GapEstimate replace_one_stability(const Network& net_template, const DatasetSpec& dataset_spec,
                                  const NoisySgdConfig& train_config, const LossEvaluator& loss,
                                  std::size_t replications, std::size_t threads = 1);

struct SweepConfig {
    DatasetSpec dataset;
    NoisySgdConfig train;
    LossEvaluator train_loss = LossEvaluator::clipped_cross_entropy();
    LossEvaluator gap_loss = LossEvaluator::zero_one();
    BinningSpec bins;
    std::size_t base_width = 16;      // first hidden width; halved per layer
    std::size_t num_classes = 2;
    Activation activation = Activation::tanh;
    std::size_t replications = 4;
    std::size_t test_n = 256;
    std::size_t threads = 1;
};

struct SweepRow {
    std::size_t depth = 0;
    double mean_gap = 0.0;
    double stderr_gap = 0.0;
    double mi_last = 0.0;      // replica-averaged final-stage MI
    double eta_geo = 1.0;      // from the replica-averaged chain
    double main_bound_value = 0.0;
    InfoChain chain;           // replica-averaged chain
    double budget_nats = 0.0;  // replica-averaged Sec. 8.4 budget (M_hat)
};

// Width-halving template: base_width -> base_width/2 -> ... (L layers), every
// layer a guaranteed contraction by shape.
Network make_width_halving_template(std::size_t input_dim, std::size_t base_width,
                                    std::size_t depth, std::size_t num_classes, Activation act);

// For each L: train, measure the gap, estimate the MI chain on held-out
// probes, and evaluate the main bound with the estimated eta and the
// per-iteration MI budget.
std::vector<SweepRow> depth_sweep(const SweepConfig& config, const std::vector<std::size_t>& depths);

// CSV: L,mean_gap,stderr,mi_last,eta_geo,main_bound
std::string sweep_csv(const std::vector<SweepRow>& rows);

// CSV: one row per replication plus a summary row.
std::string gap_csv(const GapEstimate& estimate);

}  // namespace infobound
