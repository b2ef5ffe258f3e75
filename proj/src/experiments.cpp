#include "infobound/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

#include "infobound/errors.hpp"
#include "infobound/rng.hpp"

namespace infobound {

void run_replications(std::size_t replications, std::size_t threads,
                      const std::function<void(std::size_t)>& fn) {
    threads = std::max<std::size_t>(1, std::min(threads, replications));
    if (threads == 1) {
        for (std::size_t r = 0; r < replications; ++r) fn(r);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (replications + threads - 1) / threads;
    for (std::size_t w = 0; w < threads; ++w) {
        std::size_t lo = w * chunk, hi = std::min(replications, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] {
            for (std::size_t r = lo; r < hi; ++r) fn(r);
        });
    }
    for (auto& t : pool) t.join();
}

namespace {

double mean_loss(const Network& net, const Dataset& data, const LossEvaluator& loss) {
    ActivationChain chain = forward(net, data.features);
    double total = 0.0;
    for (std::size_t e = 0; e < data.size(); ++e)
        total += evaluate_loss(loss, chain.head_logits.row(e), data.labels[e]);
    return total / static_cast<double>(data.size());
}

struct ReplicaSeeds {
    std::uint64_t data, test, init, train;
};

ReplicaSeeds replica_seeds(std::uint64_t base, std::size_t r) {
    return {mix_key(base, streams::kReplica, r, 1), mix_key(base, streams::kReplica, r, 2),
            mix_key(base, streams::kReplica, r, 3), mix_key(base, streams::kReplica, r, 4)};
}

// zero_one is evaluation-only; training falls back to the default clipped CE.
LossEvaluator training_loss_for(const LossEvaluator& loss) {
    return loss.kind == LossKind::zero_one ? LossEvaluator::clipped_cross_entropy() : loss;
}

}  // namespace

GapEstimate measure_gap(const Network& net_template, const DatasetSpec& dataset_spec,
                        const NoisySgdConfig& train_config, const LossEvaluator& loss,
                        std::size_t replications, std::size_t test_n, std::size_t threads) {
    if (replications < 1) throw ConfigError("measure_gap: replications must be >= 1");
    std::vector<double> values(replications);

    run_replications(replications, threads, [&](std::size_t r) {
        ReplicaSeeds seeds = replica_seeds(train_config.seed, r);

        DatasetSpec train_spec = dataset_spec;
        train_spec.seed = seeds.data;
        Dataset train_set = gen_dataset(train_spec);

        DatasetSpec test_spec = dataset_spec;
        test_spec.seed = seeds.test;
        test_spec.n = test_n;
        Dataset test_set = gen_dataset_disjoint(test_spec, streams::kTestData);

        Network net = init_network_like(net_template, seeds.init);
        if (train_config.iterations > 0) {
            NoisySgdConfig cfg = train_config;
            cfg.seed = seeds.train;
            net = train(net, train_set, cfg, training_loss_for(loss)).first;
        }
        values[r] = mean_loss(net, test_set, loss) - mean_loss(net, train_set, loss);
    });
    return GapEstimate::from_values(values);
}

GapEstimate replace_one_stability(const Network& net_template, const DatasetSpec& dataset_spec,
                                  const NoisySgdConfig& train_config, const LossEvaluator& loss,
                                  std::size_t replications, std::size_t threads) {
    if (replications < 1) throw ConfigError("replace_one_stability: replications must be >= 1");
    std::vector<double> values(replications);

    run_replications(replications, threads, [&](std::size_t r) {
        ReplicaSeeds seeds = replica_seeds(train_config.seed, r);

        DatasetSpec train_spec = dataset_spec;
        train_spec.seed = seeds.data;
        Dataset s = gen_dataset(train_spec);

        // One fresh point z' and a uniform position i.
        DatasetSpec prime_spec = dataset_spec;
        prime_spec.seed = mix_key(train_config.seed, streams::kReplace, r, 1);
        prime_spec.n = 1;
        Dataset zprime = gen_dataset_disjoint(prime_spec, streams::kReplace);

        CounterRng pick(train_config.seed, streams::kReplace, r);
        std::size_t i = static_cast<std::size_t>(pick.uniform_below(s.size()));

        Dataset s_replaced = s;
        {
            std::vector<double> feats = s.features.data();
            auto row = zprime.features.row(0);
            std::copy(row.begin(), row.end(),
                      feats.begin() + static_cast<std::ptrdiff_t>(i * s.features.cols()));
            s_replaced.features = Tensor(s.features.shape(), std::move(feats));
            s_replaced.labels[i] = zprime.labels[0];
        }

        // Identical init and training streams: the coupling isolates the
        // replaced point.
        Network base = init_network_like(net_template, seeds.init);
        NoisySgdConfig cfg = train_config;
        cfg.seed = seeds.train;
        Network w = base, wi = base;
        if (cfg.iterations > 0) {
            w = train(base, s, cfg, training_loss_for(loss)).first;
            wi = train(base, s_replaced, cfg, training_loss_for(loss)).first;
        }

        auto loss_on_zprime = [&](const Network& net) {
            ActivationChain chain = forward(net, zprime.features);
            return evaluate_loss(loss, chain.head_logits.row(0), zprime.labels[0]);
        };
        values[r] = loss_on_zprime(w) - loss_on_zprime(wi);
    });
    return GapEstimate::from_values(values);
}

Network make_width_halving_template(std::size_t input_dim, std::size_t base_width,
                                    std::size_t depth, std::size_t num_classes, Activation act) {
    if (depth > 0 && input_dim != base_width)
        throw ConfigError("width-halving template: input_dim must equal base_width");
    std::vector<Layer> layers;
    std::size_t width = base_width;
    for (std::size_t k = 0; k < depth; ++k) {
        std::size_t next = std::max<std::size_t>(1, width / 2);
        layers.push_back(Layer::dense(width, next, Tensor::zeros({next, width}), act));
        width = next;
    }
    std::size_t head_in = depth == 0 ? input_dim : width;
    Layer head = Layer::dense(head_in, num_classes, Tensor::zeros({num_classes, head_in}));
    return Network(std::move(layers), head);
}

std::vector<SweepRow> depth_sweep(const SweepConfig& config, const std::vector<std::size_t>& depths) {
    if (depths.empty()) throw ConfigError("depth_sweep: no depth values");
    std::vector<SweepRow> rows;

    for (std::size_t depth : depths) {
        Network net_template = make_width_halving_template(
            config.dataset.feature_dim, config.base_width, depth, config.num_classes,
            config.activation);

        SweepRow row;
        row.depth = depth;

        GapEstimate gap = measure_gap(net_template, config.dataset, config.train, config.gap_loss,
                                      config.replications, config.test_n, config.threads);
        row.mean_gap = gap.mean_gap;
        row.stderr_gap = gap.std_error;

        // Replica-averaged MI chain on held-out probes, plus the Sec. 8.4
        // budget from each replica's trace.
        std::vector<double> mi_sum(depth + 1, 0.0);
        std::vector<double> budgets(config.replications);
        std::vector<std::vector<double>> mi_rows(config.replications);
        run_replications(config.replications, config.threads, [&](std::size_t r) {
            ReplicaSeeds seeds = replica_seeds(config.train.seed, r);
            DatasetSpec train_spec = config.dataset;
            train_spec.seed = seeds.data;
            Dataset train_set = gen_dataset(train_spec);

            DatasetSpec probe_spec = config.dataset;
            probe_spec.seed = seeds.test;
            probe_spec.n = config.test_n;
            Dataset probes = gen_dataset_disjoint(probe_spec, streams::kTestData);

            Network net = init_network_like(net_template, seeds.init);
            NoisySgdConfig cfg = config.train;
            cfg.seed = seeds.train;
            TrainTrace trace;
            if (cfg.iterations > 0) {
                auto trained = train(net, train_set, cfg, config.train_loss);
                net = trained.first;
                trace = trained.second;
            }
            budgets[r] = trace.budget_total_with(trace.m_hat_max, net.head().weights().size());
            mi_rows[r] = layer_mi_chain(net, probes, config.bins).mi_per_layer;
        });
        for (const auto& mi : mi_rows)
            for (std::size_t k = 0; k <= depth; ++k) mi_sum[k] += mi[k];

        row.chain.mi_per_layer.resize(depth + 1);
        for (std::size_t k = 0; k <= depth; ++k)
            row.chain.mi_per_layer[k] = mi_sum[k] / static_cast<double>(config.replications);
        finish_chain(row.chain);
        row.chain.source = "empirical";
        row.mi_last = row.chain.mi_per_layer.back();
        row.eta_geo = row.chain.eta_geo_mean;

        double budget = 0.0;
        for (double b : budgets) budget += b;
        row.budget_nats = budget / static_cast<double>(config.replications);

        // Estimator noise can push the ratio above 1; the bound input uses
        // the conservative eta = 1 in that case while the chain still reports
        // the raw ratios.
        BoundInputs inputs;
        inputs.depth = depth;
        inputs.eta = std::clamp(row.eta_geo, 1e-12, 1.0);
        inputs.sigma = subgaussian_sigma(config.gap_loss.lo, config.gap_loss.hi);
        inputs.n = config.dataset.n;
        inputs.mi_nats = row.budget_nats;
        inputs.eta_source = "chain";
        inputs.mi_source = "budget";
        row.main_bound_value = main_bound(inputs).value;

        rows.push_back(std::move(row));
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "L,mean_gap,stderr,mi_last,eta_geo,main_bound\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.depth, r.mean_gap,
                      r.stderr_gap, r.mi_last, r.eta_geo, r.main_bound_value);
        out += buf;
    }
    return out;
}

std::string gap_csv(const GapEstimate& estimate) {
    std::string out = "replication,gap\n";
    char buf[128];
    for (std::size_t r = 0; r < estimate.per_replication.size(); ++r) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", r, estimate.per_replication[r]);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "summary,%.17g,%.17g,%zu\n", estimate.mean_gap,
                  estimate.std_error, estimate.replications);
    out += buf;
    return out;
}

}  // namespace infobound
