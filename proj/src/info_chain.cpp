#include "infobound/info_chain.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "infobound/errors.hpp"
#include "infobound/joint_counts.hpp"

namespace infobound {

std::string InfoChain::to_csv() const {
    std::string out = "k,mi_nats,eta_k\n";
    char buf[128];
    for (std::size_t k = 0; k < mi_per_layer.size(); ++k) {
        if (k >= 1 && eta_defined[k - 1])
            std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", k, mi_per_layer[k],
                          eta_per_layer[k - 1]);
        else
            std::snprintf(buf, sizeof(buf), "%zu,%.17g,\n", k, mi_per_layer[k]);
        out += buf;
    }
    return out;
}

std::string InfoChain::summary_json(double epsilon) const {
    nlohmann::json j;
    j["eta_geo_mean"] = eta_geo_mean;
    j["violations"] = dpi_check(*this, epsilon);
    return j.dump(2);
}

void finish_chain(InfoChain& chain) {
    const std::size_t stages = chain.mi_per_layer.size();
    chain.eta_per_layer.assign(stages > 0 ? stages - 1 : 0, 0.0);
    chain.eta_defined.assign(stages > 0 ? stages - 1 : 0, false);

    double log_sum = 0.0;
    std::size_t defined = 0;
    for (std::size_t k = 1; k < stages; ++k) {
        double denom = chain.mi_per_layer[k - 1];
        if (denom > kEtaDenominatorFloor) {
            double eta = chain.mi_per_layer[k] / denom;
            chain.eta_per_layer[k - 1] = eta;
            chain.eta_defined[k - 1] = true;
            if (eta > 0.0) {
                log_sum += std::log(eta);
                ++defined;
            } else {
                // A zero ratio collapses the geometric mean.
                log_sum = -std::numeric_limits<double>::infinity();
                ++defined;
            }
        }
    }
    chain.eta_geo_mean = defined == 0 ? 1.0 : std::exp(log_sum / static_cast<double>(defined));
}

InfoChain layer_mi_chain(const Network& net, const Dataset& data, const BinningSpec& bins) {
    if (data.size() == 0) throw std::invalid_argument("layer_mi_chain: empty dataset");

    ActivationChain chain = forward(net, data.features);
    std::vector<std::uint64_t> proxy = bin_features(chain.head_logits, bins);

    InfoChain out;
    out.mi_per_layer.reserve(chain.stages.size());
    for (const Tensor& stage : chain.stages) {
        std::vector<std::uint64_t> codes = bin_features(stage, bins);
        out.mi_per_layer.push_back(plugin_mi(JointCounts::from_codes(codes, proxy)));
    }
    finish_chain(out);
    out.source = "empirical";
    return out;
}

std::vector<std::size_t> dpi_check(const InfoChain& chain, double epsilon) {
    std::vector<std::size_t> violations;
    for (std::size_t k = 1; k < chain.mi_per_layer.size(); ++k)
        if (chain.mi_per_layer[k] > chain.mi_per_layer[k - 1] + epsilon) violations.push_back(k);
    return violations;
}

}  // namespace infobound
