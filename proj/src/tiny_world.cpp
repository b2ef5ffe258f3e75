#include "infobound/tiny_world.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "infobound/bounds.hpp"
#include "infobound/errors.hpp"
#include "infobound/rng.hpp"

namespace infobound {

std::string to_string(AlgorithmKind kind) {
    switch (kind) {
        case AlgorithmKind::explicit_map: return "explicit";
        case AlgorithmKind::erm: return "erm";
        case AlgorithmKind::softmax_erm: return "softmax_erm";
        case AlgorithmKind::uniform: return "uniform";
    }
    return "?";
}

AlgorithmKind algorithm_kind_from_string(const std::string& s) {
    if (s == "explicit") return AlgorithmKind::explicit_map;
    if (s == "erm") return AlgorithmKind::erm;
    if (s == "softmax_erm") return AlgorithmKind::softmax_erm;
    if (s == "uniform") return AlgorithmKind::uniform;
    throw ConfigError("unknown algorithm kind: " + s);
}

std::uint64_t TinyWorld::num_samples() const {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < sample_size; ++i) total *= num_instances();
    return total;
}

void TinyWorld::finalize() {
    if (instances.empty()) throw ConfigError("tiny world: no instances");
    if (sample_size < 1) throw ConfigError("tiny world: sample_size must be >= 1");

    double psum = 0.0;
    for (const auto& inst : instances) {
        if (!(inst.prob >= 0.0)) throw ConfigError("tiny world: negative instance probability");
        if (inst.x.size() != instances.front().x.size())
            throw ConfigError("tiny world: inconsistent feature dimensions");
        psum += inst.prob;
    }
    if (std::abs(psum - 1.0) > 1e-12)
        throw ConfigError("tiny world: instance probabilities must sum to 1");

    // Instances are points of a finite instance space: duplicate (x, y)
    // values would make the losses and the MI chain ill-defined functions of
    // the sample value.
    for (std::size_t a = 0; a < instances.size(); ++a)
        for (std::size_t b = a + 1; b < instances.size(); ++b)
            if (instances[a].x == instances[b].x && instances[a].y == instances[b].y)
                throw ConfigError("tiny world: duplicate (x, y) instance values");

    if (network_template) {
        if (head_weights.empty()) throw ConfigError("tiny world: network form needs head weights");
        num_hypotheses = head_weights.size();
        loss_table.assign(num_hypotheses * num_instances(), 0.0);
        for (std::size_t h = 0; h < num_hypotheses; ++h) {
            Network net = network_template->with_head_weights(head_weights[h]);
            for (std::size_t z = 0; z < num_instances(); ++z) {
                Tensor one({1, instances[z].x.size()}, instances[z].x);
                ActivationChain chain = forward(net, one);
                loss_table[h * num_instances() + z] =
                    evaluate_loss(loss, chain.head_logits.row(0), instances[z].y);
            }
        }
    }

    if (num_hypotheses == 0 || loss_table.size() != num_hypotheses * num_instances())
        throw ConfigError("tiny world: loss table must be |W| x |Z|");
    for (double v : loss_table)
        if (v < loss.lo - 1e-12 || v > loss.hi + 1e-12)
            throw ConfigError("tiny world: loss table value outside the declared range");

    if (algorithm == AlgorithmKind::explicit_map) {
        if (explicit_rows.size() != num_samples())
            throw ConfigError("tiny world: explicit algorithm needs one row per sample tuple");
        for (const auto& row : explicit_rows) {
            if (row.size() != num_hypotheses)
                throw ConfigError("tiny world: algorithm row size != |W|");
            double s = 0.0;
            for (double p : row) {
                if (!(p >= 0.0)) throw ConfigError("tiny world: negative algorithm probability");
                s += p;
            }
            if (std::abs(s - 1.0) > 1e-12)
                throw ConfigError("tiny world: algorithm row must sum to 1");
        }
    }
}

namespace {

// Sample tuples are mixed-radix numbers over instance indices, first element
// most significant.
std::vector<std::size_t> tuple_from_index(std::uint64_t idx, std::size_t n, std::size_t base) {
    std::vector<std::size_t> tuple(n);
    for (std::size_t i = n; i-- > 0;) {
        tuple[i] = static_cast<std::size_t>(idx % base);
        idx /= base;
    }
    return tuple;
}

std::uint64_t replace_digit(std::uint64_t idx, std::size_t pos, std::size_t n, std::size_t base,
                            std::size_t old_digit, std::size_t new_digit) {
    std::uint64_t place = 1;
    for (std::size_t i = 0; i < n - 1 - pos; ++i) place *= base;
    return idx + place * (static_cast<std::uint64_t>(new_digit) - static_cast<std::uint64_t>(old_digit));
}

std::size_t sample_from_pmf(const std::vector<double>& pmf, double u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        acc += pmf[i];
        if (u <= acc) return i;
    }
    return pmf.size() - 1;
}

}  // namespace

std::vector<double> TinyWorld::algorithm_row(const std::vector<std::size_t>& tuple) const {
    switch (algorithm) {
        case AlgorithmKind::explicit_map: {
            std::uint64_t idx = 0;
            for (std::size_t z : tuple) idx = idx * num_instances() + z;
            return explicit_rows[static_cast<std::size_t>(idx)];
        }
        case AlgorithmKind::uniform:
            return std::vector<double>(num_hypotheses, 1.0 / static_cast<double>(num_hypotheses));
        case AlgorithmKind::erm:
        case AlgorithmKind::softmax_erm: {
            std::vector<double> emp(num_hypotheses, 0.0);
            for (std::size_t h = 0; h < num_hypotheses; ++h) {
                for (std::size_t z : tuple) emp[h] += loss_table[h * num_instances() + z];
                emp[h] /= static_cast<double>(sample_size);
            }
            std::vector<double> row(num_hypotheses, 0.0);
            if (algorithm == AlgorithmKind::erm) {
                std::size_t best = 0;
                for (std::size_t h = 1; h < num_hypotheses; ++h)
                    if (emp[h] < emp[best]) best = h;
                row[best] = 1.0;
            } else {
                double m = *std::min_element(emp.begin(), emp.end());
                double sum = 0.0;
                for (std::size_t h = 0; h < num_hypotheses; ++h) {
                    row[h] = std::exp(-gibbs_beta * static_cast<double>(sample_size) * (emp[h] - m));
                    sum += row[h];
                }
                for (double& p : row) p /= sum;
            }
            return row;
        }
    }
    throw std::logic_error("tiny world: unknown algorithm kind");
}

TinyWorldExact tiny_world_exact(const TinyWorld& world, std::uint64_t budget) {
    const std::size_t nz = world.num_instances();
    const std::size_t n = world.sample_size;
    const std::size_t nw = world.num_hypotheses;
    if (nw == 0) throw ConfigError("tiny_world_exact: world not finalized");

    const std::uint64_t tuples = world.num_samples();
    if (tuples * std::max<std::uint64_t>(nw, nz * n) > budget)
        throw BudgetExceededError("tiny_world_exact: joint state space exceeds the budget");

    // Joint law over (sample tuple, hypothesis) and the hypothesis marginal.
    std::vector<double> p_s(tuples, 0.0);
    std::vector<std::vector<double>> joint(tuples);
    std::vector<double> p_w(nw, 0.0);

    // Population risk per hypothesis.
    std::vector<double> pop_risk(nw, 0.0);
    for (std::size_t h = 0; h < nw; ++h)
        for (std::size_t z = 0; z < nz; ++z)
            pop_risk[h] += world.instances[z].prob * world.loss_table[h * nz + z];

    // Expected loss on each instance under the algorithm's output: used by
    // both the gap and the replace-one enumeration.
    std::vector<std::vector<double>> exp_loss(tuples, std::vector<double>(nz, 0.0));

    double exact_gap = 0.0;
    for (std::uint64_t si = 0; si < tuples; ++si) {
        std::vector<std::size_t> tuple = tuple_from_index(si, n, nz);
        double ps = 1.0;
        for (std::size_t z : tuple) ps *= world.instances[z].prob;
        p_s[si] = ps;

        std::vector<double> row = world.algorithm_row(tuple);
        joint[si].resize(nw);
        double emp_mean = 0.0;
        for (std::size_t h = 0; h < nw; ++h) {
            joint[si][h] = ps * row[h];
            p_w[h] += joint[si][h];
            double emp = 0.0;
            for (std::size_t z : tuple) emp += world.loss_table[h * nz + z];
            emp /= static_cast<double>(n);
            exact_gap += joint[si][h] * (pop_risk[h] - emp);
            emp_mean += row[h] * emp;
            for (std::size_t z = 0; z < nz; ++z)
                exp_loss[si][z] += row[h] * world.loss_table[h * nz + z];
        }
        (void)emp_mean;
    }

    double mi_s_w = 0.0;
    for (std::uint64_t si = 0; si < tuples; ++si)
        for (std::size_t h = 0; h < nw; ++h) {
            double j = joint[si][h];
            if (j > 0.0 && p_s[si] > 0.0 && p_w[h] > 0.0)
                mi_s_w += j * std::log(j / (p_s[si] * p_w[h]));
        }
    if (mi_s_w < 0.0) mi_s_w = 0.0;

    // Replace-one average, Definition 5, by direct enumeration.
    double beta = 0.0;
    for (std::uint64_t si = 0; si < tuples; ++si) {
        if (p_s[si] == 0.0) continue;
        std::vector<std::size_t> tuple = tuple_from_index(si, n, nz);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t zp = 0; zp < nz; ++zp) {
                double w = p_s[si] * world.instances[zp].prob / static_cast<double>(n);
                if (w == 0.0) continue;
                std::uint64_t rep = replace_digit(si, i, n, nz, tuple[i], zp);
                beta += w * (exp_loss[si][zp] - exp_loss[rep][zp]);
            }
    }

    // Exact conditional MI chain. Stage values are deterministic functions of
    // the sample, so grouping tuples by stage value realizes T_k exactly.
    TinyWorldExact out;
    out.mi_s_w = mi_s_w;
    out.exact_gap = exact_gap;
    out.exact_beta = beta;

    const std::size_t depth = world.network_template ? world.network_template->depth() : 0;
    out.mi_chain.mi_per_layer.clear();

    // Per-instance stage values, stage 0 = raw features.
    std::vector<std::vector<std::vector<double>>> stage_values(depth + 1);
    for (std::size_t z = 0; z < nz; ++z) stage_values[0].push_back(world.instances[z].x);
    if (world.network_template) {
        for (std::size_t k = 0; k < depth; ++k) {
            stage_values[k + 1].resize(nz);
            for (std::size_t z = 0; z < nz; ++z) {
                Tensor cur({1, stage_values[k][z].size()}, stage_values[k][z]);
                Tensor next = apply_layer(world.network_template->layers()[k], cur);
                stage_values[k + 1][z] = next.data();
            }
        }
    }

    for (std::size_t k = 0; k <= depth; ++k) {
        // Group sample tuples by the value of (stage_k(x_i), y_i) over i.
        std::map<std::vector<double>, std::size_t> groups;
        std::vector<std::size_t> group_of(tuples);
        for (std::uint64_t si = 0; si < tuples; ++si) {
            std::vector<std::size_t> tuple = tuple_from_index(si, n, nz);
            std::vector<double> key;
            for (std::size_t z : tuple) {
                key.insert(key.end(), stage_values[k][z].begin(), stage_values[k][z].end());
                key.push_back(static_cast<double>(world.instances[z].y));
            }
            group_of[si] = groups.emplace(std::move(key), groups.size()).first->second;
        }
        std::vector<double> pg(groups.size(), 0.0);
        std::vector<std::vector<double>> q(groups.size(), std::vector<double>(nw, 0.0));
        for (std::uint64_t si = 0; si < tuples; ++si) {
            pg[group_of[si]] += p_s[si];
            for (std::size_t h = 0; h < nw; ++h) q[group_of[si]][h] += joint[si][h];
        }
        double mi = 0.0;
        for (std::size_t g = 0; g < groups.size(); ++g)
            for (std::size_t h = 0; h < nw; ++h)
                if (q[g][h] > 0.0 && pg[g] > 0.0 && p_w[h] > 0.0)
                    mi += q[g][h] * std::log(q[g][h] / (pg[g] * p_w[h]));
        out.mi_chain.mi_per_layer.push_back(mi < 0.0 ? 0.0 : mi);
    }
    finish_chain(out.mi_chain);
    out.mi_chain.source = "exact";
    out.eta_exact = out.mi_chain.eta_geo_mean;
    return out;
}

Lemma4Report lemma4_soundness_check(const TinyWorld& world, std::uint64_t budget) {
    TinyWorldExact exact = tiny_world_exact(world, budget);
    const double sigma = subgaussian_sigma(world.loss.lo, world.loss.hi);
    const double n = static_cast<double>(world.sample_size);

    Lemma4Report r;
    r.gap = exact.exact_gap;
    r.mi_last = exact.mi_chain.mi_per_layer.back();
    r.lemma4_bound = std::sqrt(2.0 * sigma * sigma / n * r.mi_last);
    r.lemma4_slack = r.lemma4_bound - std::abs(r.gap);

    const double depth = static_cast<double>(exact.mi_chain.mi_per_layer.size() - 1);
    double eta = std::min(exact.eta_exact, 1.0);
    r.theorem2_bound =
        std::pow(eta, 0.5 * depth) * std::sqrt(2.0 * sigma * sigma / n * exact.mi_s_w);
    r.theorem2_slack = r.theorem2_bound - std::abs(r.gap);

    r.holds = r.lemma4_slack >= -1e-12 && r.theorem2_slack >= -1e-12;
    return r;
}

GapEstimate tiny_world_measure_gap_mc(const TinyWorld& world, std::size_t replications,
                                      std::uint64_t seed) {
    if (replications < 1) throw ConfigError("tiny_world_measure_gap_mc: replications must be >= 1");
    const std::size_t nz = world.num_instances();

    // Instance-index CDF sampling keeps the replica stream deterministic.
    std::vector<double> inst_pmf(nz);
    for (std::size_t z = 0; z < nz; ++z) inst_pmf[z] = world.instances[z].prob;

    std::vector<double> pop_risk(world.num_hypotheses, 0.0);
    for (std::size_t h = 0; h < world.num_hypotheses; ++h)
        for (std::size_t z = 0; z < nz; ++z)
            pop_risk[h] += world.instances[z].prob * world.loss_table[h * nz + z];

    std::vector<double> values(replications);
    for (std::size_t r = 0; r < replications; ++r) {
        CounterRng rng(seed, streams::kReplica, r);
        std::vector<std::size_t> tuple(world.sample_size);
        for (auto& z : tuple) z = sample_from_pmf(inst_pmf, rng.uniform01());
        std::size_t h = sample_from_pmf(world.algorithm_row(tuple), rng.uniform01());
        double emp = 0.0;
        for (std::size_t z : tuple) emp += world.loss_table[h * nz + z];
        emp /= static_cast<double>(world.sample_size);
        values[r] = pop_risk[h] - emp;
    }
    return GapEstimate::from_values(values);
}

GapEstimate tiny_world_replace_one_mc(const TinyWorld& world, std::size_t replications,
                                      std::uint64_t seed) {
    if (replications < 1) throw ConfigError("tiny_world_replace_one_mc: replications must be >= 1");
    const std::size_t nz = world.num_instances();
    std::vector<double> inst_pmf(nz);
    for (std::size_t z = 0; z < nz; ++z) inst_pmf[z] = world.instances[z].prob;

    std::vector<double> values(replications);
    for (std::size_t r = 0; r < replications; ++r) {
        CounterRng rng(seed, streams::kReplace, r);
        std::vector<std::size_t> tuple(world.sample_size);
        for (auto& z : tuple) z = sample_from_pmf(inst_pmf, rng.uniform01());
        std::size_t i = static_cast<std::size_t>(rng.uniform_below(world.sample_size));
        std::size_t zp = sample_from_pmf(inst_pmf, rng.uniform01());

        std::vector<std::size_t> replaced = tuple;
        replaced[i] = zp;

        // Shared uniform couples the two hypothesis draws.
        double u = rng.uniform01();
        std::size_t w = sample_from_pmf(world.algorithm_row(tuple), u);
        std::size_t wi = sample_from_pmf(world.algorithm_row(replaced), u);
        values[r] = world.loss_table[w * nz + zp] - world.loss_table[wi * nz + zp];
    }
    return GapEstimate::from_values(values);
}

TinyWorld make_random_tiny_world(std::uint64_t index) {
    CounterRng rng(0xC0FFEEULL, streams::kWorld, index);
    TinyWorld world;
    const bool network_form = index % 3 == 0;

    const std::size_t nz = 2 + static_cast<std::size_t>(rng.uniform_below(3));  // 2..4
    world.sample_size = 1 + static_cast<std::size_t>(rng.uniform_below(3));     // 1..3

    const std::size_t dim = network_form ? 2 : 1;
    double psum = 0.0;
    std::vector<double> pw(nz);
    for (std::size_t z = 0; z < nz; ++z) {
        pw[z] = 0.1 + rng.uniform01();
        psum += pw[z];
    }
    for (std::size_t z = 0; z < nz; ++z) {
        TinyWorldInstance inst;
        inst.prob = pw[z] / psum;
        // Rejection keeps (x, y) values distinct across instances.
        for (;;) {
            inst.x.clear();
            inst.y = static_cast<int>(rng.uniform_below(2));
            for (std::size_t d = 0; d < dim; ++d)
                inst.x.push_back(static_cast<double>(rng.uniform_below(3)) - 1.0);
            bool clash = false;
            for (const auto& other : world.instances)
                clash |= other.x == inst.x && other.y == inst.y;
            if (!clash) break;
        }
        world.instances.push_back(std::move(inst));
    }
    // Exact renormalization so the probabilities sum to 1 bit-exactly.
    double total = 0.0;
    for (const auto& inst : world.instances) total += inst.prob;
    world.instances.back().prob += 1.0 - total;

    if (network_form) {
        const std::size_t depth = 1 + static_cast<std::size_t>(rng.uniform_below(2));
        std::vector<Layer> layers;
        Activation acts[] = {Activation::identity, Activation::tanh, Activation::relu};
        if (depth == 2) {
            // Rank-1 square layer followed by a narrowing layer.
            double u0 = rng.gaussian(), u1 = rng.gaussian();
            double v0 = rng.gaussian(), v1 = rng.gaussian();
            layers.push_back(Layer::dense(2, 2,
                                          Tensor::matrix(2, 2, {u0 * v0, u0 * v1, u1 * v0, u1 * v1}),
                                          acts[rng.uniform_below(3)]));
        }
        layers.push_back(Layer::dense(2, 1, Tensor::matrix(1, 2, {rng.gaussian(), rng.gaussian()}),
                                      acts[rng.uniform_below(3)]));
        Layer head = Layer::dense(1, 2, Tensor::matrix(2, 1, {0.0, 0.0}));
        world.network_template = Network(std::move(layers), head);

        const std::size_t nw = 2 + static_cast<std::size_t>(rng.uniform_below(7));  // 2..8
        for (std::size_t h = 0; h < nw; ++h) {
            double a = 0.5 * (static_cast<double>(rng.uniform_below(5)) - 2.0);
            double b = 0.5 * (static_cast<double>(rng.uniform_below(5)) - 2.0);
            world.head_weights.push_back(Tensor::matrix(2, 1, {a, b}));
        }
        world.loss = index % 2 == 0 ? LossEvaluator::clipped_cross_entropy(0.0, 4.0)
                                    : LossEvaluator::zero_one();
    } else {
        world.num_hypotheses = 2 + static_cast<std::size_t>(rng.uniform_below(15));  // 2..16
        world.loss = LossEvaluator::zero_one();
        world.loss_table.resize(world.num_hypotheses * nz);
        for (double& v : world.loss_table) v = rng.uniform01();
    }

    switch (index % 4) {
        case 0: world.algorithm = AlgorithmKind::erm; break;
        case 1: world.algorithm = AlgorithmKind::softmax_erm; world.gibbs_beta = 2.0; break;
        case 2: world.algorithm = AlgorithmKind::uniform; break;
        default: {
            world.algorithm = AlgorithmKind::explicit_map;
            // Rows filled after finalize-time sizes are known; see below.
            break;
        }
    }

    if (world.algorithm == AlgorithmKind::explicit_map) {
        std::size_t nw = network_form ? world.head_weights.size() : world.num_hypotheses;
        world.explicit_rows.resize(world.num_samples());
        for (auto& row : world.explicit_rows) {
            row.resize(nw);
            double s = 0.0;
            for (double& p : row) {
                p = 0.05 + rng.uniform01();
                s += p;
            }
            for (double& p : row) p /= s;
            double acc = 0.0;
            for (double p : row) acc += p;
            row.back() += 1.0 - acc;
        }
    }

    world.finalize();
    return world;
}

namespace {

nlohmann::json loss_to_json(const LossEvaluator& loss) {
    return {{"kind", loss.kind == LossKind::zero_one ? "zero_one" : "clipped_cross_entropy"},
            {"lo", loss.lo},
            {"hi", loss.hi}};
}

LossEvaluator loss_from_json(const nlohmann::json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero_one") return LossEvaluator::zero_one();
    if (kind == "clipped_cross_entropy")
        return LossEvaluator::clipped_cross_entropy(j.value("lo", 0.0), j.value("hi", 4.0));
    throw ConfigError("unknown loss kind: " + kind);
}

}  // namespace

std::string tiny_world_to_json(const TinyWorld& world, int indent) {
    nlohmann::json j;
    j["instances"] = nlohmann::json::array();
    for (const auto& inst : world.instances)
        j["instances"].push_back({{"x", inst.x}, {"y", inst.y}, {"prob", inst.prob}});
    j["sample_size"] = world.sample_size;
    j["loss"] = loss_to_json(world.loss);

    if (world.network_template) {
        j["hypotheses"]["network"] = nlohmann::json::parse(network_to_json(*world.network_template, -1));
        j["hypotheses"]["head_weights"] = nlohmann::json::array();
        for (const auto& w : world.head_weights) j["hypotheses"]["head_weights"].push_back(w.data());
    } else {
        auto table = nlohmann::json::array();
        for (std::size_t h = 0; h < world.num_hypotheses; ++h) {
            std::vector<double> row(world.loss_table.begin() + h * world.num_instances(),
                                    world.loss_table.begin() + (h + 1) * world.num_instances());
            table.push_back(row);
        }
        j["hypotheses"]["loss_table"] = table;
    }

    j["algorithm"]["kind"] = to_string(world.algorithm);
    if (world.algorithm == AlgorithmKind::softmax_erm) j["algorithm"]["beta"] = world.gibbs_beta;
    if (world.algorithm == AlgorithmKind::explicit_map) j["algorithm"]["rows"] = world.explicit_rows;
    return j.dump(indent);
}

TinyWorld tiny_world_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    TinyWorld world;
    for (const auto& ij : j.at("instances")) {
        TinyWorldInstance inst;
        inst.x = ij.at("x").get<std::vector<double>>();
        inst.y = ij.at("y").get<int>();
        inst.prob = ij.at("prob").get<double>();
        world.instances.push_back(std::move(inst));
    }
    world.sample_size = j.at("sample_size").get<std::size_t>();
    world.loss = loss_from_json(j.at("loss"));

    const auto& hj = j.at("hypotheses");
    if (hj.contains("network")) {
        world.network_template = network_from_json(hj.at("network").dump());
        for (const auto& wj : hj.at("head_weights")) {
            auto values = wj.get<std::vector<double>>();
            world.head_weights.push_back(
                Tensor(world.network_template->head().weights().shape(), std::move(values)));
        }
    } else {
        auto table = hj.at("loss_table").get<std::vector<std::vector<double>>>();
        world.num_hypotheses = table.size();
        for (const auto& row : table)
            world.loss_table.insert(world.loss_table.end(), row.begin(), row.end());
    }

    const auto& aj = j.at("algorithm");
    world.algorithm = algorithm_kind_from_string(aj.at("kind").get<std::string>());
    world.gibbs_beta = aj.value("beta", 1.0);
    if (world.algorithm == AlgorithmKind::explicit_map)
        world.explicit_rows = aj.at("rows").get<std::vector<std::vector<double>>>();

    world.finalize();
    return world;
}

}  // namespace infobound
