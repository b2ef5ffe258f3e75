#include "infobound/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "infobound/errors.hpp"

namespace infobound {

namespace {
constexpr double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;
}

std::string to_string(BoundKind kind) {
    switch (kind) {
        case BoundKind::main: return "main";
        case BoundKind::stability: return "stability";
        case BoundKind::noisy_sgd: return "noisy_sgd";
        case BoundKind::binary: return "binary";
        case BoundKind::excess: return "excess";
        case BoundKind::high_prob: return "high_prob";
    }
    return "?";
}

void BoundInputs::validate() const {
    if (!(eta > 0.0) || eta > 1.0) throw std::invalid_argument("bounds: eta must be in (0, 1]");
    if (!(sigma > 0.0)) throw std::invalid_argument("bounds: sigma must be positive");
    if (n < 1) throw std::invalid_argument("bounds: n must be >= 1");
    if (mi_nats < 0.0) throw std::invalid_argument("bounds: mi_nats must be >= 0");
}

namespace {

double eta_power(double eta, std::uint64_t depth) {
    return std::pow(eta, 0.5 * static_cast<double>(depth));
}

BoundReport make_report(BoundKind kind, const BoundInputs& inputs, double sqrt_factor) {
    BoundReport r;
    r.kind = kind;
    r.exp_factor = eta_power(inputs.eta, inputs.depth);
    r.sqrt_factor = sqrt_factor;
    r.value = r.exp_factor * r.sqrt_factor;
    r.inputs = inputs;
    return r;
}

}  // namespace

BoundReport main_bound(const BoundInputs& inputs) {
    inputs.validate();
    double sqrt_factor =
        std::sqrt(2.0 * inputs.sigma * inputs.sigma * inputs.mi_nats / static_cast<double>(inputs.n));
    return make_report(BoundKind::main, inputs, sqrt_factor);
}

BoundReport stability_rate(const BoundInputs& inputs) {
    BoundReport r = main_bound(inputs);
    r.kind = BoundKind::stability;
    return r;
}

BoundReport noisy_sgd_bound(const BoundInputs& inputs) {
    inputs.validate();
    if (!inputs.m_bound || !(*inputs.m_bound > 0.0))
        throw std::invalid_argument("noisy_sgd_bound: M must be present and positive");
    if (!inputs.schedule) throw std::invalid_argument("noisy_sgd_bound: schedule required");

    const Schedule& sched = *inputs.schedule;
    double ratio_sum = 0.0;
    if (!inputs.iterations) {
        if (sched.kind != ScheduleKind::inverse_square)
            throw std::invalid_argument(
                "noisy_sgd_bound: T = infinity is only closed for inverse_square schedules");
        ratio_sum = sched.c * kZeta2;
    } else {
        for (std::uint64_t t = 1; t <= *inputs.iterations; ++t) {
            ScheduleValue v = schedule_at(sched, t);
            ratio_sum += (v.lr * v.lr) / (v.noise * v.noise);
        }
    }
    double m2 = (*inputs.m_bound) * (*inputs.m_bound);
    double sqrt_factor =
        std::sqrt(inputs.sigma * inputs.sigma / static_cast<double>(inputs.n) * m2 * ratio_sum);
    return make_report(BoundKind::noisy_sgd, inputs, sqrt_factor);
}

BoundReport binary_bound(const BoundInputs& inputs) {
    inputs.validate();
    if (!inputs.vc_dim || *inputs.vc_dim < 1)
        throw std::invalid_argument("binary_bound: vc_dim must be present and >= 1");
    double d = static_cast<double>(*inputs.vc_dim);
    double n = static_cast<double>(inputs.n);
    double base = 2.0 * inputs.sigma * inputs.sigma * d / n;
    double sqrt_factor = inputs.n <= *inputs.vc_dim
                             ? std::sqrt(base)
                             : std::sqrt(base * std::log(std::numbers::e * n / d));
    return make_report(BoundKind::binary, inputs, sqrt_factor);
}

double excess_risk_bound(const BoundReport& report) {
    if (report.kind != BoundKind::main && report.kind != BoundKind::noisy_sgd &&
        report.kind != BoundKind::binary)
        throw std::invalid_argument("excess_risk_bound: report kind must be main/noisy_sgd/binary");
    return report.value;
}

double high_prob_bound(const BoundReport& report, double delta) {
    if (!(delta > 0.0) || delta > 1.0)
        throw std::invalid_argument("high_prob_bound: delta must be in (0, 1]");
    return report.value / delta;
}

double subgaussian_sigma(double lo, double hi) {
    if (!(hi > lo)) throw std::invalid_argument("subgaussian_sigma: need hi > lo");
    return (hi - lo) / 2.0;
}

BoundInputs bound_inputs_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    BoundInputs in;
    in.depth = j.value("L", std::uint64_t{0});
    in.eta = j.value("eta", 1.0);
    in.sigma = j.at("sigma").get<double>();
    in.n = j.at("n").get<std::uint64_t>();
    in.mi_nats = j.value("mi_nats", 0.0);
    if (j.contains("M")) in.m_bound = j["M"].get<double>();
    if (j.contains("vc_dim")) in.vc_dim = j["vc_dim"].get<std::uint64_t>();
    if (j.contains("T")) in.iterations = j["T"].get<std::uint64_t>();
    if (j.contains("schedule")) {
        const auto& js = j["schedule"];
        ScheduleKind kind = schedule_kind_from_string(js.at("kind").get<std::string>());
        if (kind == ScheduleKind::inverse_square)
            in.schedule = Schedule::inverse_square(js.at("C").get<double>());
        else
            in.schedule = Schedule::constant(js.at("lr").get<double>(), js.at("noise").get<double>());
    }
    in.eta_source = j.value("eta_source", std::string("user"));
    in.mi_source = j.value("mi_source", std::string("user"));
    return in;
}

std::string BoundReport::to_json(int indent) const {
    nlohmann::json j;
    j["kind"] = to_string(kind);
    j["units"] = "nats";
    j["value"] = value;
    j["factors"] = {{"exp_factor", exp_factor}, {"sqrt_factor", sqrt_factor}};
    nlohmann::json ji;
    ji["L"] = inputs.depth;
    ji["eta"] = inputs.eta;
    ji["sigma"] = inputs.sigma;
    ji["n"] = inputs.n;
    ji["mi_nats"] = inputs.mi_nats;
    ji["eta_source"] = inputs.eta_source;
    ji["mi_source"] = inputs.mi_source;
    if (inputs.m_bound) ji["M"] = *inputs.m_bound;
    if (inputs.vc_dim) ji["vc_dim"] = *inputs.vc_dim;
    if (inputs.iterations) ji["T"] = *inputs.iterations;
    if (inputs.schedule) {
        ji["schedule"]["kind"] = to_string(inputs.schedule->kind);
        if (inputs.schedule->kind == ScheduleKind::inverse_square)
            ji["schedule"]["C"] = inputs.schedule->c;
        else {
            ji["schedule"]["lr"] = inputs.schedule->c;
            ji["schedule"]["noise"] = inputs.schedule->c_noise;
        }
    }
    j["inputs"] = ji;
    return j.dump(indent);
}

std::string bound_report_csv_header() { return "kind,L,eta,sigma,n,mi,value"; }

std::string bound_report_csv_row(const BoundReport& report) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s,%llu,%.17g,%.17g,%llu,%.17g,%.17g",
                  to_string(report.kind).c_str(),
                  static_cast<unsigned long long>(report.inputs.depth), report.inputs.eta,
                  report.inputs.sigma, static_cast<unsigned long long>(report.inputs.n),
                  report.inputs.mi_nats, report.value);
    return buf;
}

}  // namespace infobound
