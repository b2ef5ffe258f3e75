#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "infobound/info_chain.hpp"
#include "infobound/loss.hpp"
#include "infobound/network.hpp"
#include "infobound/stats.hpp"

namespace infobound {

inline constexpr std::uint64_t kDefaultJointStateBudget = 10'000'000;

struct TinyWorldInstance {
    std::vector<double> x;
    int y = 0;
    double prob = 0.0;
};

enum class AlgorithmKind { explicit_map, erm, softmax_erm, uniform };

std::string to_string(AlgorithmKind kind);
AlgorithmKind algorithm_kind_from_string(const std::string& s);

/// Fully enumerable instance space, sample size, hypothesis space, and
/// randomized algorithm map. Every expectation and mutual information in the
/// bounds is computable exactly by summation over |Z|^n x |W| joint states.
///
/// Hypotheses are either abstract (an explicit loss table) or realized as
/// networks: a fixed hidden stack shared by all hypotheses plus one head
/// weight setting per hypothesis, with the loss table derived by evaluation.
struct TinyWorld {
    std::vector<TinyWorldInstance> instances;
    std::size_t sample_size = 1;
    LossEvaluator loss = LossEvaluator::zero_one();

    std::size_t num_hypotheses = 0;
    std::vector<double> loss_table;  // [h * |Z| + z], filled by finalize() for network worlds

    std::optional<Network> network_template;  // head weights swapped per hypothesis
    std::vector<Tensor> head_weights;

    // P_{W|S}: explicit rows are indexed by the mixed-radix sample tuple
    // (first element most significant). erm breaks ties to the lowest index;
    // softmax_erm uses weights exp(-beta * n * R_s(w)).
    AlgorithmKind algorithm = AlgorithmKind::erm;
    double gibbs_beta = 1.0;
    std::vector<std::vector<double>> explicit_rows;

    std::size_t num_instances() const { return instances.size(); }
    std::uint64_t num_samples() const;  // |Z|^n

    // Derives the loss table for network worlds and checks all invariants.
    void finalize();

    // PMF over hypotheses for the sample tuple (instance indices).
    std::vector<double> algorithm_row(const std::vector<std::size_t>& tuple) const;
};

struct TinyWorldExact {
    double mi_s_w = 0.0;      // I(S, W) in nats
    double exact_gap = 0.0;   // E[R(W) - R_S(W)]
    double exact_beta = 0.0;  // Definition-5 replace-one average
    InfoChain mi_chain;       // exact conditional chain; length 1 for abstract worlds
    double eta_exact = 1.0;
};

// Exact evaluation of every expectation by enumeration. Throws
// BudgetExceededError when |Z|^n * |W| exceeds the budget.
TinyWorldExact tiny_world_exact(const TinyWorld& world,
                                std::uint64_t budget = kDefaultJointStateBudget);

struct Lemma4Report {
    double gap = 0.0;
    double mi_last = 0.0;         // I(T_L, h | w_1..w_L), exact
    double lemma4_bound = 0.0;    // sqrt(2 sigma^2 / n * mi_last)
    double lemma4_slack = 0.0;    // bound - |gap|
    double theorem2_bound = 0.0;  // eta^(L/2) sqrt(2 sigma^2 / n * I(S,W)), exact eta
    double theorem2_slack = 0.0;
    bool holds = false;
};

// Verifies |E[R - R_S]| against the conditional-MI bound and the Theorem-2
// form with exact quantities; abstract worlds are treated as depth 0.
Lemma4Report lemma4_soundness_check(const TinyWorld& world,
                                    std::uint64_t budget = kDefaultJointStateBudget);

// Monte Carlo counterparts driven by the world's own algorithm map, used to
// validate the enumeration against sampling.
GapEstimate tiny_world_measure_gap_mc(const TinyWorld& world, std::size_t replications,
                                      std::uint64_t seed);
GapEstimate tiny_world_replace_one_mc(const TinyWorld& world, std::size_t replications,
                                      std::uint64_t seed);

// Deterministic randomized corpus entry; mixes abstract and network-backed
// worlds (every third world carries a 1-2 layer contraction stack).
TinyWorld make_random_tiny_world(std::uint64_t index);

std::string tiny_world_to_json(const TinyWorld& world, int indent = 2);
TinyWorld tiny_world_from_json(const std::string& json_text);

}  // namespace infobound
