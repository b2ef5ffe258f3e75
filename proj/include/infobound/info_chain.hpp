#pragma once

#include <string>
#include <vector>

#include "infobound/binning.hpp"
#include "infobound/datasets.hpp"
#include "infobound/network.hpp"

namespace infobound {

inline constexpr double kEtaDenominatorFloor = 1e-9;

/// Per-layer mutual-information estimates (nats) between each stage and the
/// head-output proxy, with the derived information-loss factors.
struct InfoChain {
    std::vector<double> mi_per_layer;   // index k: I(T_k; proxy), length L+1
    std::vector<double> eta_per_layer;  // index k-1: mi[k]/mi[k-1], length L
    std::vector<bool> eta_defined;      // false where mi[k-1] <= floor
    double eta_geo_mean = 1.0;          // over defined ratios only
    std::string source = "empirical";   // empirical | exact | user

    // CSV: k,mi_nats,eta_k (eta blank for k = 0 and undefined ratios).
    std::string to_csv() const;

    // {"eta_geo_mean": ..., "violations": [k...]} at the given tolerance.
    std::string summary_json(double epsilon) const;
};

// Builds the per-layer ratio/geometric-mean fields from mi_per_layer.
void finish_chain(InfoChain& chain);

// Empirical chain: bins every stage of the forward pass and the head logits,
// then applies the plug-in estimator per layer.
InfoChain layer_mi_chain(const Network& net, const Dataset& data, const BinningSpec& bins);

// Indices k >= 1 where mi[k] > mi[k-1] + epsilon.
std::vector<std::size_t> dpi_check(const InfoChain& chain, double epsilon);

}  // namespace infobound
