#include "infobound/stats.hpp"

#include <stdexcept>

namespace infobound {

GapEstimate GapEstimate::from_values(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("GapEstimate: no replications");
    StreamingMoments moments;
    for (double v : values) moments.push(v);
    GapEstimate est;
    est.mean_gap = moments.mean();
    est.std_error = moments.std_error();
    est.std_error_defined = values.size() > 1;
    est.replications = values.size();
    est.per_replication = values;
    return est;
}

}  // namespace infobound
