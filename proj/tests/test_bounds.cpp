#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "infobound/bounds.hpp"
#include "infobound/rng.hpp"

using namespace infobound;

namespace {

BoundInputs base_inputs() {
    BoundInputs in;
    in.depth = 0;
    in.eta = 1.0;
    in.sigma = 0.5;
    in.n = 50;
    in.mi_nats = 1.0;
    return in;
}

}  // namespace

TEST_CASE("main bound goldens") {
    BoundInputs in = base_inputs();
    CHECK(main_bound(in).value == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(main_bound(in).exp_factor == 1.0);

    in.mi_nats = 0.0;
    CHECK(main_bound(in).value == 0.0);

    in = base_inputs();
    in.depth = 2;
    in.eta = 0.25;
    BoundReport r = main_bound(in);
    CHECK(r.exp_factor == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(r.value == doctest::Approx(0.025).epsilon(1e-13));
    CHECK(r.value == r.exp_factor * r.sqrt_factor);
}

TEST_CASE("main bound validates its inputs") {
    BoundInputs in = base_inputs();
    in.eta = 0.0;
    CHECK_THROWS_AS(main_bound(in), std::invalid_argument);
    in.eta = 1.5;
    CHECK_THROWS_AS(main_bound(in), std::invalid_argument);
    in = base_inputs();
    in.mi_nats = -0.1;
    CHECK_THROWS_AS(main_bound(in), std::invalid_argument);
}

TEST_CASE("stability rate equals the main bound") {
    CounterRng rng(61, 0, 0);
    for (int trial = 0; trial < 50; ++trial) {
        BoundInputs in;
        in.depth = rng.uniform_below(6);
        in.eta = 0.05 + 0.95 * rng.uniform01();
        in.sigma = 0.1 + rng.uniform01();
        in.n = 1 + rng.uniform_below(1000);
        in.mi_nats = 3.0 * rng.uniform01();
        BoundReport s = stability_rate(in);
        CHECK(s.kind == BoundKind::stability);
        CHECK(s.value == main_bound(in).value);
    }

    // 1/sqrt(n) scaling: 4n halves the rate.
    BoundInputs in = base_inputs();
    BoundInputs in4 = in;
    in4.n = 4 * in.n;
    CHECK(stability_rate(in4).value == doctest::Approx(0.5 * stability_rate(in).value).epsilon(1e-12));
}

TEST_CASE("exponential decay ratio: bound(L+2)/bound(L) equals eta") {
    CounterRng rng(62, 0, 0);
    for (int trial = 0; trial < 100; ++trial) {
        BoundInputs in;
        in.depth = rng.uniform_below(8);
        in.eta = 0.02 + 0.97 * rng.uniform01();
        in.sigma = 0.1 + 2.0 * rng.uniform01();
        in.n = 1 + rng.uniform_below(10000);
        in.mi_nats = 0.01 + 5.0 * rng.uniform01();
        BoundInputs deeper = in;
        deeper.depth = in.depth + 2;
        double ratio = main_bound(deeper).value / main_bound(in).value;
        CHECK(std::abs(ratio - in.eta) <= 1e-12 * in.eta + 1e-15);
    }
}

TEST_CASE("main bound monotonicity") {
    CounterRng rng(63, 0, 0);
    for (int trial = 0; trial < 50; ++trial) {
        BoundInputs in;
        in.depth = rng.uniform_below(5);
        in.eta = 0.05 + 0.9 * rng.uniform01();
        in.sigma = 0.1 + rng.uniform01();
        in.n = 2 + rng.uniform_below(1000);
        in.mi_nats = 0.1 + rng.uniform01();

        BoundInputs deeper = in;
        deeper.depth = in.depth + 1;
        CHECK(main_bound(deeper).value < main_bound(in).value);  // eta < 1

        BoundInputs more_info = in;
        more_info.mi_nats = in.mi_nats * 1.5;
        CHECK(main_bound(more_info).value > main_bound(in).value);

        BoundInputs wider = in;
        wider.sigma = in.sigma * 1.5;
        CHECK(main_bound(wider).value > main_bound(in).value);

        BoundInputs bigger = in;
        bigger.n = in.n * 2;
        CHECK(main_bound(bigger).value < main_bound(in).value);
    }
}

TEST_CASE("noisy sgd bound goldens") {
    BoundInputs in;
    in.depth = 0;
    in.eta = 1.0;
    in.sigma = 0.5;
    in.n = 100;
    in.m_bound = 1.0;

    in.schedule = Schedule::constant(0.1, 0.1);
    in.iterations = 0;
    CHECK(noisy_sgd_bound(in).value == 0.0);

    in.iterations = 4;
    CHECK(noisy_sgd_bound(in).value == doctest::Approx(0.1).epsilon(1e-13));

    in.schedule = Schedule::inverse_square(0.06);
    in.iterations.reset();
    CHECK(noisy_sgd_bound(in).value ==
          doctest::Approx(0.005 * std::numbers::pi).epsilon(1e-13));
    CHECK(std::abs(noisy_sgd_bound(in).value - 0.015707963267948967) <= 1e-12);

    in.schedule = Schedule::constant(0.1, 0.1);
    CHECK_THROWS_AS(noisy_sgd_bound(in), std::invalid_argument);  // T = inf, constant
}

TEST_CASE("finite-T noisy sgd bound never exceeds the zeta(2) cap") {
    CounterRng rng(64, 0, 0);
    for (int trial = 0; trial < 50; ++trial) {
        BoundInputs in;
        in.depth = rng.uniform_below(4);
        in.eta = 0.1 + 0.9 * rng.uniform01();
        in.sigma = 0.1 + rng.uniform01();
        in.n = 1 + rng.uniform_below(500);
        in.m_bound = 0.1 + 2.0 * rng.uniform01();
        in.schedule = Schedule::inverse_square(0.01 + rng.uniform01());

        BoundInputs inf = in;
        inf.iterations.reset();
        double cap = noisy_sgd_bound(inf).value;
        for (std::uint64_t T : {std::uint64_t{1}, std::uint64_t{5}, std::uint64_t{50},
                                std::uint64_t{500}}) {
            in.iterations = T;
            CHECK(noisy_sgd_bound(in).value <= cap + 1e-12);
        }
    }
}

TEST_CASE("binary bound goldens and branch continuity") {
    BoundInputs in;
    in.depth = 0;
    in.eta = 1.0;
    in.sigma = 0.5;

    in.n = 4;
    in.vc_dim = 4;
    CHECK(binary_bound(in).value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));

    in.n = 100;
    in.vc_dim = 5;
    CHECK(binary_bound(in).value == doctest::Approx(0.316059024295858).epsilon(1e-9));
    CHECK(std::abs(binary_bound(in).value - 0.316059) <= 1e-6);

    // Continuity at n = vc_dim: ln(e n / d) = 1 there, so both branches give
    // eta^(L/2) sqrt(2 sigma^2).
    CounterRng rng(65, 0, 0);
    for (int trial = 0; trial < 20; ++trial) {
        std::uint64_t d = 1 + rng.uniform_below(50);
        BoundInputs at;
        at.depth = rng.uniform_below(4);
        at.eta = 0.2 + 0.8 * rng.uniform01();
        at.sigma = 0.1 + rng.uniform01();
        at.n = d;
        at.vc_dim = d;
        double expected = std::pow(at.eta, 0.5 * static_cast<double>(at.depth)) *
                          std::sqrt(2.0 * at.sigma * at.sigma);
        CHECK(binary_bound(at).value == doctest::Approx(expected).epsilon(1e-12));

        BoundInputs above = at;
        above.n = d + 1;  // second branch just past the boundary
        double second = std::pow(at.eta, 0.5 * static_cast<double>(at.depth)) *
                        std::sqrt(2.0 * at.sigma * at.sigma * static_cast<double>(d) /
                                  static_cast<double>(d + 1) *
                                  std::log(std::numbers::e * static_cast<double>(d + 1) /
                                           static_cast<double>(d)));
        CHECK(binary_bound(above).value == doctest::Approx(second).epsilon(1e-12));
    }
}

TEST_CASE("excess risk is a pass-through with a kind gate") {
    BoundInputs in = base_inputs();
    BoundReport main = main_bound(in);
    CHECK(excess_risk_bound(main) == main.value);

    in.mi_nats = 0.0;
    CHECK(excess_risk_bound(main_bound(in)) == 0.0);

    BoundReport stab = stability_rate(base_inputs());
    CHECK_THROWS_AS(excess_risk_bound(stab), std::invalid_argument);
}

TEST_CASE("high probability lift") {
    BoundReport r = main_bound(base_inputs());  // value 0.1
    CHECK(high_prob_bound(r, 1.0) == r.value);
    CHECK(high_prob_bound(r, 0.5) == doctest::Approx(0.2).epsilon(1e-13));
    BoundInputs in = base_inputs();
    in.depth = 2;
    in.eta = 0.25;
    CHECK(high_prob_bound(main_bound(in), 0.1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK_THROWS_AS(high_prob_bound(r, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(high_prob_bound(r, -0.5), std::invalid_argument);
}

TEST_CASE("subgaussian sigma from the loss range") {
    CHECK(subgaussian_sigma(0.0, 1.0) == 0.5);
    CHECK(subgaussian_sigma(0.0, 4.0) == 2.0);
    CHECK_THROWS_AS(subgaussian_sigma(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("bound inputs parse from json and reports serialize") {
    std::string text = R"({"L": 2, "eta": 0.25, "sigma": 0.5, "n": 50, "mi_nats": 1.0})";
    BoundInputs in = bound_inputs_from_json(text);
    BoundReport r = main_bound(in);
    CHECK(r.value == doctest::Approx(0.025).epsilon(1e-13));
    CHECK(r.to_json().find("\"value\"") != std::string::npos);
    CHECK(bound_report_csv_row(r).rfind("main,2,", 0) == 0);

    std::string sgd = R"({"sigma": 0.5, "n": 100, "M": 1.0,
                          "schedule": {"kind": "inverse_square", "C": 0.06}})";
    CHECK(noisy_sgd_bound(bound_inputs_from_json(sgd)).value ==
          doctest::Approx(0.005 * std::numbers::pi).epsilon(1e-13));
}
