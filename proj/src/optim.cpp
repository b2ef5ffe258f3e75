#include "infobound/optim.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "infobound/datasets.hpp"
#include "infobound/errors.hpp"
#include "infobound/rng.hpp"

namespace infobound {

void NoisySgdConfig::validate(std::size_t depth) const {
    if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
    if (!seed_set) throw ConfigError("seed is required (no wall-clock seeding)");
    if (!layer_schedules.empty() && layer_schedules.size() != depth)
        throw ConfigError("layer_schedules must be empty or match the network depth");
    auto check = [](const Schedule& s) {
        ScheduleValue v = schedule_at(s, 1);
        if (!(v.lr > 0.0)) throw ConfigError("learning rate must be strictly positive");
        if (!(v.noise > 0.0)) throw ConfigError("noise scale must be strictly positive");
    };
    check(head_schedule);
    for (const auto& s : layer_schedules) check(s);
}

double TrainTrace::budget_total_with(double m_squared, std::size_t head_dim) const {
    double total = 0.0;
    for (const auto& r : rows)
        total += mi_budget_increment(r.alpha, r.sigma, head_dim, m_squared);
    return total;
}

double TrainTrace::lr_noise_ratio_sum() const {
    double total = 0.0;
    for (const auto& r : rows) total += (r.alpha * r.alpha) / (r.sigma * r.sigma);
    return total;
}

std::string TrainTrace::to_csv() const {
    std::string out = "t,alpha,sigma,head_grad_sq,budget_increment,budget_total\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%llu,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      static_cast<unsigned long long>(r.t), r.alpha, r.sigma, r.head_grad_sq,
                      r.budget_increment, r.budget_total);
        out += buf;
    }
    return out;
}

namespace {

Tensor stepped_weights(const Tensor& w, const Tensor& g, double lr, double noise_scale,
                       CounterRng* rng) {
    if (!w.same_shape(g)) throw ShapeError("sgd step: gradient shape does not match weights");
    std::vector<double> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        double nz = (noise_scale > 0.0 && rng) ? noise_scale * rng->gaussian() : 0.0;
        out[i] = w.data()[i] - lr * g.data()[i] + nz;
    }
    return Tensor(w.shape(), std::move(out));
}

}  // namespace

Network sgd_step(const Network& net, const GradientSet& grads, double lr) {
    if (grads.layers.size() != net.depth()) throw ShapeError("sgd_step: gradient set size mismatch");
    Network out = net;
    for (std::size_t k = 0; k < net.depth(); ++k) {
        if (!net.layers()[k].has_weights()) continue;
        out = out.with_layer_weights(
            k, stepped_weights(net.layers()[k].weights(), grads.layers[k], lr, 0.0, nullptr));
    }
    return out.with_head_weights(stepped_weights(net.head().weights(), grads.head, lr, 0.0, nullptr));
}

Network noisy_sgd_step(const Network& net, const GradientSet& grads,
                       const std::vector<double>& lrs, const std::vector<double>& noise_scales,
                       std::uint64_t seed, std::uint64_t t) {
    if (grads.layers.size() != net.depth())
        throw ShapeError("noisy_sgd_step: gradient set size mismatch");
    if (lrs.size() != net.depth() + 1 || noise_scales.size() != net.depth() + 1)
        throw ShapeError("noisy_sgd_step: need one lr/noise per layer plus the head (index 0)");

    CounterRng head_rng(mix_key(seed, streams::kNoise, t, 0));
    Network out = net;
    for (std::size_t k = 0; k < net.depth(); ++k) {
        if (!net.layers()[k].has_weights()) continue;
        CounterRng rng(mix_key(seed, streams::kNoise, t, k + 1));
        out = out.with_layer_weights(
            k, stepped_weights(net.layers()[k].weights(), grads.layers[k], lrs[k + 1],
                               noise_scales[k + 1], &rng));
    }
    return out.with_head_weights(
        stepped_weights(net.head().weights(), grads.head, lrs[0], noise_scales[0], &head_rng));
}

double mi_budget_increment(double alpha, double sigma, std::size_t head_dim, double m_squared) {
    if (!(sigma > 0.0)) throw std::invalid_argument("mi_budget_increment: sigma must be positive");
    if (head_dim == 0) throw std::invalid_argument("mi_budget_increment: head_dim must be positive");
    if (m_squared < 0.0) throw std::invalid_argument("mi_budget_increment: M^2 must be >= 0");
    double d = static_cast<double>(head_dim);
    return 0.5 * d * std::log1p(alpha * alpha * m_squared / (d * sigma * sigma));
}

double mi_budget_cap(double alpha, double sigma, double m_squared) {
    if (!(sigma > 0.0)) throw std::invalid_argument("mi_budget_cap: sigma must be positive");
    return alpha * alpha * m_squared / (2.0 * sigma * sigma);
}

Network init_network_like(const Network& net, std::uint64_t seed) {
    auto draw = [&](const Tensor& w, std::size_t fan_in, std::uint64_t index) {
        CounterRng rng(seed, streams::kInit, index);
        double scale = 1.0 / std::sqrt(static_cast<double>(fan_in));
        std::vector<double> out(w.size());
        for (double& v : out) v = scale * rng.gaussian();
        return Tensor(w.shape(), std::move(out));
    };
    Network out = net;
    for (std::size_t k = 0; k < net.depth(); ++k) {
        const Layer& l = net.layers()[k];
        if (!l.has_weights()) continue;
        std::size_t fan_in = l.kind() == LayerKind::conv2d
                                 ? l.geometry().in_channels * l.geometry().kernel * l.geometry().kernel
                                 : l.in_dim();
        out = out.with_layer_weights(k, draw(l.weights(), fan_in, k + 1));
    }
    return out.with_head_weights(draw(net.head().weights(), net.head().in_dim(), 0));
}

std::pair<Network, TrainTrace> train(const Network& net, const Dataset& data,
                                     const NoisySgdConfig& config, const LossEvaluator& loss) {
    config.validate(net.depth());
    if (data.size() < config.batch_size)
        throw ConfigError("train: dataset size must be >= batch_size");

    const std::size_t m = config.batch_size;
    const std::size_t dim = data.features.cols();
    const std::size_t head_dim = net.head().weights().size();

    Network current = net;
    TrainTrace trace;
    trace.rows.reserve(config.iterations);

    for (std::uint64_t t = 1; t <= config.iterations; ++t) {
        ScheduleValue head_sv = schedule_at(config.head_schedule, t);

        // Mini-batch with replacement.
        CounterRng batch_rng(config.seed, streams::kBatch, t);
        std::vector<double> bx(m * dim);
        std::vector<int> by(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t idx = batch_rng.uniform_below(data.size());
            auto row = data.features.row(idx);
            std::copy(row.begin(), row.end(), bx.begin() + static_cast<std::ptrdiff_t>(i * dim));
            by[i] = data.labels[idx];
        }
        Tensor batch({m, dim}, std::move(bx));
        GradientSet grads = backward(current, batch, by, loss);

        double grad_sq = 0.0;
        for (double g : grads.head.data()) grad_sq += g * g;

        std::vector<double> lrs(net.depth() + 1, head_sv.lr);
        std::vector<double> noises(net.depth() + 1, head_sv.noise);
        for (std::size_t k = 0; k < config.layer_schedules.size(); ++k) {
            ScheduleValue sv = schedule_at(config.layer_schedules[k], t);
            lrs[k + 1] = sv.lr;
            noises[k + 1] = sv.noise;
        }
        current = noisy_sgd_step(current, grads, lrs, noises, config.seed, t);

        TraceRow row;
        row.t = t;
        row.alpha = head_sv.lr;
        row.sigma = head_sv.noise;
        row.head_grad_sq = grad_sq;
        row.budget_increment = mi_budget_increment(head_sv.lr, head_sv.noise, head_dim, grad_sq);
        trace.mi_budget_total += row.budget_increment;
        row.budget_total = trace.mi_budget_total;
        trace.rows.push_back(row);

        trace.m_hat_max = std::max(trace.m_hat_max, grad_sq);
        trace.m_hat_mean += (grad_sq - trace.m_hat_mean) / static_cast<double>(t);
    }
    return {std::move(current), std::move(trace)};
}

}  // namespace infobound
