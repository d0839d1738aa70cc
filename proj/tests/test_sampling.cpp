#include "doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "betaspec/convergence.hpp"
#include "betaspec/rng.hpp"
#include "betaspec/sampling.hpp"
#include "test_util.hpp"

using namespace betaspec;

TEST_CASE("standard normal matches its first two moments") {
    RngStream rng(1);
    const int n = 1000000;
    std::vector<double> x(n);
    for (auto& v : x) v = sample_normal(rng);
    CHECK(std::abs(mean_of(x)) < 0.004);
    CHECK(std::abs(variance_of(x) - 1.0) < 0.01);
}

TEST_CASE("frozen first normal draw for seed 42") {
    RngStream rng(42);
    CHECK(sample_normal(rng) == doctest::Approx(0.98139839007249818).epsilon(1e-16));
}

TEST_CASE("scaled chi squares to the gamma mean") {
    RngStream rng(2);
    const int n = 1000000;
    // k = 2c with c = 1: X^2 ~ Gamma(1,1)
    std::vector<double> sq(n);
    for (auto& v : sq) {
        const double x = sample_chi_scaled(rng, 2.0);
        v = x * x;
    }
    CHECK(std::abs(mean_of(sq) - 1.0) < 0.006);

    for (auto& v : sq) {
        const double x = sample_chi_scaled(rng, 3.0);
        v = x * x;
    }
    CHECK(std::abs(mean_of(sq) - 1.5) < 0.01);
}

TEST_CASE("chi-squared law at k = 2 is exponential") {
    RngStream rng(3);
    std::vector<double> sq(100000);
    for (auto& v : sq) {
        const double x = sample_chi_scaled(rng, 2.0);
        v = x * x;
    }
    const double d = ks_sample_vs_cdf(sq, [](double x) { return -std::expm1(-x); });
    CHECK(d < 0.01);
}

TEST_CASE("beta sampler hits analytic means") {
    RngStream rng(4);
    const int n = 1000000;
    std::vector<double> x(n);
    for (auto& v : x) v = sample_beta(rng, 2.0, 3.0);
    CHECK(std::abs(mean_of(x) - 0.4) < 0.002);

    for (auto& v : x) v = sample_beta(rng, 0.05, 0.95);
    CHECK(std::abs(mean_of(x) - 0.05) < 0.002);
}

TEST_CASE("Beta(1,1) draws are uniform") {
    RngStream rng(5);
    std::vector<double> x(100000);
    for (auto& v : x) v = sample_beta(rng, 1.0, 1.0);
    CHECK(ks_sample_vs_cdf(x, [](double u) { return std::clamp(u, 0.0, 1.0); }) < 0.01);
}

TEST_CASE("symmetric Dirichlet basics") {
    RngStream rng(6);
    CHECK(sample_dirichlet_symmetric(rng, 1, 0.5) == std::vector<double>{1.0});

    // Simplex membership holds for every draw.
    for (int t = 0; t < 1000; ++t) {
        const auto w = sample_dirichlet_symmetric(rng, 20, 0.05);
        double s = 0.0;
        for (double wi : w) {
            CHECK(wi >= 0.0);
            s += wi;
        }
        CHECK(std::abs(s - 1.0) < 1e-12);
    }
}

TEST_CASE("Dirichlet marginal mean in the c/N regime") {
    RngStream rng(7);
    const int n = 100000;
    std::vector<double> w1(n);
    for (auto& v : w1) v = sample_dirichlet_symmetric(rng, 50, 1.0 / 50.0)[0];
    // Var(w_1) = p(1-p)/(tau_0 + 1) with p = 1/50 and tau_0 = 1.
    const double se = std::sqrt(0.02 * 0.98 / 2.0 / n);
    CHECK(std::abs(mean_of(w1) - 0.02) < 3.0 * se);
}

TEST_CASE("Dirichlet marginal at n = 2 is arcsine") {
    RngStream rng(8);
    std::vector<double> w1(100000);
    for (auto& v : w1) v = sample_dirichlet_symmetric(rng, 2, 0.5)[0];
    const double pi = 3.14159265358979323846;
    const double d = ks_sample_vs_cdf(
        w1, [&](double x) { return 2.0 / pi * std::asin(std::sqrt(std::clamp(x, 0.0, 1.0))); });
    CHECK(d < 0.01);
}

TEST_CASE("stick-breaking weights") {
    RngStream rng(9);

    SUBCASE("first stick mean is 1/(1+c)") {
        const int n = 1000000;
        std::vector<double> first(n);
        for (auto& v : first) v = sample_gem(rng, 1.0, 1)[0];
        CHECK(std::abs(mean_of(first) - 0.5) < 0.002);
    }

    SUBCASE("leftover mass after 20 sticks") {
        const int n = 1000000;
        std::vector<double> leftover(n);
        for (auto& v : leftover) v = sample_gem(rng, 1.0, 20).back();
        const double expected = std::pow(0.5, 20);
        CHECK(std::abs(mean_of(leftover) - expected) < 4.0 * se_of(leftover) + 1e-12);
    }

    SUBCASE("truncation 1 returns the stick and its complement") {
        const auto w = sample_gem(rng, 2.0, 1);
        REQUIRE(w.size() == 2);
        CHECK(w[0] + w[1] == doctest::Approx(1.0).epsilon(1e-15));
    }

    SUBCASE("frozen draw for seed 123") {
        RngStream s(123);
        const auto w = sample_gem(s, 1.0, 3);
        CHECK(w[0] == doctest::Approx(0.35415129597089168).epsilon(1e-15));
        CHECK(w[3] == doctest::Approx(0.36043835675163266).epsilon(1e-15));
    }
}

TEST_CASE("descending rearrangement") {
    CHECK(sorted_descending({0.2, 0.5, 0.3}) == std::vector<double>{0.5, 0.3, 0.2});
    CHECK(sorted_descending({0.25, 0.25, 0.25, 0.25}) ==
          std::vector<double>{0.25, 0.25, 0.25, 0.25});
}

TEST_CASE("ordered Dirichlet tops approach the stick-breaking tops") {
    // Kingman limit: the largest coordinate of Dir(c/N) converges in law
    // to the largest stick-breaking weight.
    RngStream rng(10);
    const int draws = 10000;
    std::vector<double> dir_top(draws), gem_top(draws);
    for (auto& v : dir_top)
        v = sorted_descending(sample_dirichlet_symmetric(rng, 200, 1.0 / 200.0))[0];
    for (auto& v : gem_top) v = sorted_descending(sample_gem(rng, 1.0, 200))[0];
    CHECK(ks_two_sample(dir_top, gem_top) < 0.03);
}

TEST_CASE("samplers reject invalid parameters") {
    RngStream rng(11);
    CHECK_THROWS_AS(sample_gamma(rng, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_chi_scaled(rng, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_beta(rng, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_dirichlet_symmetric(rng, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_gem(rng, -1.0, 5), std::invalid_argument);
}

TEST_CASE("gamma sampler means across the shape boundary") {
    RngStream rng(12);
    const int n = 200000;
    for (double shape : {0.3, 1.0, 2.5, 7.0}) {
        std::vector<double> x(n);
        for (auto& v : x) v = sample_gamma(rng, shape);
        CHECK(std::abs(mean_of(x) - shape) < 4.0 * se_of(x));
    }
}

TEST_CASE("first two sample moments track the analytic values") {
    RngStream rng(13);
    const int n = 100000;
    std::vector<double> x(n);
    struct Case {
        const char* name;
        std::function<double(RngStream&)> draw;
        double mean;
        double var;
    };
    const std::vector<Case> cases = {
        {"normal", [](RngStream& r) { return sample_normal(r); }, 0.0, 1.0},
        {"gamma(2.5)", [](RngStream& r) { return sample_gamma(r, 2.5); }, 2.5, 2.5},
        {"beta(2,3)", [](RngStream& r) { return sample_beta(r, 2.0, 3.0); }, 0.4,
         2.0 * 3.0 / (25.0 * 6.0)},
        {"chi~(3) squared", [](RngStream& r) {
             const double v = sample_chi_scaled(r, 3.0);
             return v * v;
         }, 1.5, 1.5},
    };
    for (const auto& tc : cases) {
        INFO(tc.name);
        for (auto& v : x) v = tc.draw(rng);
        CHECK(std::abs(mean_of(x) - tc.mean) < 4.0 * se_of(x));
        // SE of the sample variance approximated through the fourth moment.
        const double m = mean_of(x);
        double m4 = 0.0;
        for (double v : x) m4 += std::pow(v - m, 4);
        m4 /= n;
        const double var = variance_of(x);
        const double se_var = std::sqrt(std::max(0.0, m4 - var * var) / n);
        CHECK(std::abs(var - tc.var) < 4.0 * se_var);
    }
}
