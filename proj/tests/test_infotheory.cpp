#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "infobound/binning.hpp"
#include "infobound/dv_bound.hpp"
#include "infobound/growth.hpp"
#include "infobound/info_chain.hpp"
#include "infobound/joint_counts.hpp"
#include "infobound/pmf.hpp"
#include "infobound/rng.hpp"

using namespace infobound;

namespace {
constexpr double kLn2 = 0.6931471805599453;
constexpr double kLn4 = 1.3862943611198906;
}

TEST_CASE("discrete_entropy goldens") {
    CHECK(discrete_entropy(DiscretePmf({0.25, 0.25, 0.25, 0.25})) ==
          doctest::Approx(kLn4).epsilon(1e-12));
    CHECK(discrete_entropy(DiscretePmf({1.0, 0.0, 0.0})) == 0.0);
    CHECK(discrete_entropy(DiscretePmf({0.5, 0.25, 0.25})) ==
          doctest::Approx(1.0397207708399179).epsilon(1e-12));
}

TEST_CASE("plugin_mi goldens") {
    // Product structure: counts = rows (1,2) x cols (1,2).
    JointCounts product(2, 2);
    product.add(0, 0, 1);
    product.add(0, 1, 2);
    product.add(1, 0, 2);
    product.add(1, 1, 4);
    CHECK(plugin_mi(product) <= 1e-12);

    JointCounts diag(4, 4);
    for (std::size_t i = 0; i < 4; ++i) diag.add(i, i, 1);
    CHECK(plugin_mi(diag) == doctest::Approx(kLn4).epsilon(1e-12));

    // [[2,1],[1,2]] with n = 6, frozen from the exact-fraction evaluation.
    JointCounts mixed(2, 2);
    mixed.add(0, 0, 2);
    mixed.add(0, 1, 1);
    mixed.add(1, 0, 1);
    mixed.add(1, 1, 2);
    CHECK(plugin_mi(mixed) == doctest::Approx(0.05663301226513249).epsilon(1e-12));
}

TEST_CASE("plugin_mi is bounded by both marginal entropies") {
    CounterRng rng(51, 0, 0);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t xb = 2 + rng.uniform_below(4), yb = 2 + rng.uniform_below(4);
        JointCounts counts(xb, yb);
        for (std::size_t x = 0; x < xb; ++x)
            for (std::size_t y = 0; y < yb; ++y) counts.add(x, y, rng.uniform_below(6));
        if (counts.total() == 0) continue;

        double n = static_cast<double>(counts.total());
        std::vector<double> px(xb, 0.0), py(yb, 0.0);
        for (std::size_t x = 0; x < xb; ++x)
            for (std::size_t y = 0; y < yb; ++y) {
                px[x] += static_cast<double>(counts.at(x, y)) / n;
                py[y] += static_cast<double>(counts.at(x, y)) / n;
            }
        double mi = plugin_mi(counts);
        CHECK(mi >= 0.0);
        CHECK(mi <= discrete_entropy(DiscretePmf(px)) + 1e-12);
        CHECK(mi <= discrete_entropy(DiscretePmf(py)) + 1e-12);
    }
}

TEST_CASE("bin_features goldens") {
    BinningSpec two_bins;
    two_bins.bins_per_dim = 2;
    two_bins.range_policy = RangePolicy::fixed;
    two_bins.fixed_lo = 0.0;
    two_bins.fixed_hi = 1.0;
    auto codes = bin_features(Tensor({3, 1}, {0.0, 0.5, 1.0}), two_bins);
    CHECK(codes == std::vector<std::uint64_t>{0, 1, 1});

    BinningSpec observed;
    observed.bins_per_dim = 4;
    auto constant = bin_features(Tensor({3, 2}, {2, 2, 2, 2, 2, 2}), observed);
    CHECK(constant == std::vector<std::uint64_t>{0, 0, 0});
}

TEST_CASE("binning is a per-example map (order invariant)") {
    BinningSpec spec;
    spec.bins_per_dim = 8;
    Tensor a({4, 2}, {0.1, 0.9, 0.5, 0.2, 0.8, 0.4, 0.3, 0.7});
    Tensor b({4, 2}, {0.8, 0.4, 0.1, 0.9, 0.3, 0.7, 0.5, 0.2});  // rows permuted
    auto ca = bin_features(a, spec);
    auto cb = bin_features(b, spec);
    std::multiset<std::uint64_t> ma(ca.begin(), ca.end()), mb(cb.begin(), cb.end());
    CHECK(ma == mb);
}

TEST_CASE("layer_mi_chain: identity network gives a constant chain") {
    Tensor eye = Tensor::matrix(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
    Network net({Layer::dense(3, 3, eye), Layer::dense(3, 3, eye)},
                Layer::dense(3, 2, Tensor::matrix(2, 3, {1, -1, 0.5, 0, 1, -0.5})));
    CounterRng rng(52, 0, 0);
    std::vector<double> x(60);
    for (double& v : x) v = rng.gaussian();
    Dataset data{Tensor({20, 3}, std::move(x)), std::vector<int>(20, 0)};

    InfoChain chain = layer_mi_chain(net, data, BinningSpec{});
    REQUIRE(chain.mi_per_layer.size() == 3);
    CHECK(chain.mi_per_layer[1] == chain.mi_per_layer[0]);
    CHECK(chain.mi_per_layer[2] == chain.mi_per_layer[0]);
    CHECK(chain.eta_geo_mean == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dpi_check(chain, 1e-9).empty());
}

TEST_CASE("layer_mi_chain: a constant layer kills the information") {
    Network net({Layer::dense(2, 2, Tensor::zeros({2, 2}))},
                Layer::dense(2, 2, Tensor::matrix(2, 2, {1, 0, 0, 1})));
    CounterRng rng(53, 0, 0);
    std::vector<double> x(40);
    for (double& v : x) v = rng.gaussian();
    Dataset data{Tensor({20, 2}, std::move(x)), std::vector<int>(20, 0)};

    InfoChain chain = layer_mi_chain(net, data, BinningSpec{});
    CHECK(chain.mi_per_layer[1] == 0.0);
}

TEST_CASE("layer_mi_chain: depth zero yields a single-entry chain") {
    Network net({}, Layer::dense(2, 2, Tensor::matrix(2, 2, {1, 0, 0, 1})));
    Dataset data{Tensor({4, 2}, {0, 1, 1, 0, 0.5, 0.5, 1, 1}), {0, 1, 0, 1}};
    InfoChain chain = layer_mi_chain(net, data, BinningSpec{});
    CHECK(chain.mi_per_layer.size() == 1);
    CHECK(chain.eta_per_layer.empty());
    CHECK(chain.eta_geo_mean == 1.0);
}

TEST_CASE("dpi_check flags only genuine rises") {
    InfoChain monotone;
    monotone.mi_per_layer = {1.0, 0.7, 0.3};
    finish_chain(monotone);
    CHECK(dpi_check(monotone, 0.0).empty());

    InfoChain rising;
    rising.mi_per_layer = {0.5, 0.6};
    finish_chain(rising);
    CHECK(dpi_check(rising, 0.05) == std::vector<std::size_t>{1});

    InfoChain within_tol;
    within_tol.mi_per_layer = {0.5, 0.52};
    finish_chain(within_tol);
    CHECK(dpi_check(within_tol, 0.05).empty());
}

TEST_CASE("eta ratios and undefined flags") {
    InfoChain chain;
    chain.mi_per_layer = {2.0, 1.0, 0.0, 0.0};
    finish_chain(chain);
    CHECK(chain.eta_defined[0]);
    CHECK(chain.eta_per_layer[0] == 0.5);
    CHECK(chain.eta_defined[1]);
    CHECK(chain.eta_per_layer[1] == 0.0);
    CHECK_FALSE(chain.eta_defined[2]);  // 0/0 excluded
    CHECK(chain.eta_geo_mean == 0.0);   // a zero ratio collapses the mean
}

TEST_CASE("dv lower bound: constants contribute zero") {
    std::vector<double> p{1.0, 2.0, 3.0};
    std::vector<double> q{-1.0, 0.5};
    CHECK(dv_lower_bound(p, q, {[](double) { return 2.5; }}) == doctest::Approx(0.0).epsilon(1e-12));

    DiscretePmf pm({0.5, 0.5}), qm({0.25, 0.75});
    CHECK(dv_lower_bound_exact(pm, qm, {[](std::size_t) { return 7.0; }}) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("dv lower bound: P = Q with a constant in the family gives exactly 0") {
    DiscretePmf p({0.3, 0.2, 0.5});
    std::vector<std::function<double(std::size_t)>> family{
        [](std::size_t) { return 0.0; },
        [](std::size_t i) { return 0.4 * static_cast<double>(i) - 0.3; },
    };
    double v = dv_lower_bound_exact(p, p, family);
    CHECK(v <= 1e-12);
    CHECK(v >= -1e-12);  // the constant makes the sup exactly 0
}

TEST_CASE("dv lower bound never exceeds the exact KL (50 random pairs)") {
    CounterRng rng(54, 0, 0);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t k = 2 + rng.uniform_below(4);
        std::vector<double> pv(k), qv(k);
        double ps = 0.0, qs = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            pv[i] = 0.05 + rng.uniform01();
            qv[i] = 0.05 + rng.uniform01();
            ps += pv[i];
            qs += qv[i];
        }
        for (std::size_t i = 0; i < k; ++i) {
            pv[i] /= ps;
            qv[i] /= qs;
        }
        pv[k - 1] = 1.0 - std::accumulate(pv.begin(), pv.end() - 1, 0.0);
        qv[k - 1] = 1.0 - std::accumulate(qv.begin(), qv.end() - 1, 0.0);
        DiscretePmf p(pv), q(qv);

        std::vector<std::function<double(std::size_t)>> family;
        family.emplace_back([](std::size_t) { return 0.0; });
        for (int f = 0; f < 6; ++f) {
            double a = rng.gaussian(), b = rng.gaussian();
            family.emplace_back([a, b](std::size_t i) { return a * static_cast<double>(i) + b; });
        }
        // The optimal witness ln(p/q) is in the closure of measurable F.
        family.emplace_back([&pv, &qv](std::size_t i) { return std::log(pv[i] / qv[i]); });

        double dv = dv_lower_bound_exact(p, q, family);
        double kl = discrete_kl(p, q);
        CHECK(dv <= kl + 1e-12);
        CHECK(dv >= -1e-12);
    }
}

TEST_CASE("dv gaussian mean-shift recovers 1/2 nat") {
    // P = N(1,1), Q = N(0,1): KL = 1/2, optimal F(x) = x - 1/2 on the grid.
    CounterRng rng(55, 0, 0);
    const std::size_t n = 100000;
    std::vector<double> p(n), q(n);
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = 1.0 + rng.gaussian();
        q[i] = rng.gaussian();
    }
    std::vector<TestFunction> family;
    for (double a = 0.0; a <= 2.01; a += 0.25)
        family.emplace_back([a](double x) { return a * x - a * a / 2.0; });
    double v = dv_lower_bound(p, q, family);
    CHECK(std::abs(v - 0.5) <= 0.02);
}

TEST_CASE("sauer growth bound goldens") {
    CHECK(sauer_growth_bound(2, 3).value == 4.0);
    CHECK(sauer_growth_bound(3, 3).value == 8.0);
    // (10 e / 3)^3, recomputed at high precision before freezing.
    CHECK(sauer_growth_bound(10, 3).value == doctest::Approx(743.9087749328766).epsilon(1e-9));
    CHECK(sauer_growth_bound(10, 3).log_value ==
          doctest::Approx(std::log(743.9087749328766)).epsilon(1e-12));
}

TEST_CASE("exact dichotomy counts") {
    // One point, a class realizing both labels.
    CHECK(exact_dichotomy_count(1, 2, [](std::size_t h, std::size_t) {
              return static_cast<int>(h);
          }) == 2);

    // Thresholds on a line over 3 sorted points: 4 monotone patterns.
    std::vector<double> points{0.0, 1.0, 2.0};
    std::vector<double> thresholds{-0.5, 0.5, 1.5, 2.5, 3.5};
    CHECK(exact_dichotomy_count(points.size(), thresholds.size(), [&](std::size_t h, std::size_t i) {
              return points[i] >= thresholds[h] ? 1 : 0;
          }) == 4);
}

TEST_CASE("dichotomy counts respect the Sauer bound (threshold class, VC dim 1)") {
    CounterRng rng(56, 0, 0);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 1 + rng.uniform_below(8);
        std::vector<double> points(n);
        for (double& v : points) v = rng.gaussian();
        std::vector<double> thresholds(32);
        for (double& v : thresholds) v = 2.0 * rng.gaussian();
        auto count = exact_dichotomy_count(n, thresholds.size(), [&](std::size_t h, std::size_t i) {
            return points[i] >= thresholds[h] ? 1 : 0;
        });
        CHECK(static_cast<double>(count) <= sauer_growth_bound(n, 1).value + 1e-9);
    }
}
