#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "dlsa/channel.hpp"
#include "helpers.hpp"

using namespace dlsa;

TEST_CASE("log-linear rate evaluates the closed form") {
    const RateFunction rate(RateKind::LogLinear, 6, 3);
    CHECK(rate.value(3, 2, 1) == doctest::Approx(1.9459101490553132).epsilon(1e-14));
    CHECK(rate.value(3, 2, 0) == 0);
    CHECK(rate.value(0, 6, 1) == 0);
    CHECK(rate.mu_max() == doctest::Approx(2.9444389791664403).epsilon(1e-14));
}

TEST_CASE("rate rejects out-of-range power") {
    const RateFunction rate(RateKind::LogLinear, 6, 3);
    CHECK_THROWS_AS(rate.value(3, -0.5, 1), std::domain_error);
    CHECK_THROWS_AS(rate.value(3, 6.5, 1), std::domain_error);
}

TEST_CASE("rate is increasing and concave in power") {
    const RateFunction rate(RateKind::LogLinear, 6, 3);
    const double h = 0.05;
    double prev = rate.value(3, 0, 1);
    double prev_diff = -1;
    for (double p = h; p <= 6.0 + 1e-12; p += h) {
        const double cur = rate.value(3, p, 1);
        const double diff = cur - prev;
        CHECK(diff > 0);
        if (prev_diff >= 0) CHECK(diff <= prev_diff + 1e-12);  // second difference <= 0
        prev_diff = diff;
        prev = cur;
    }
}

TEST_CASE("channel sampling is a pure function of (seed, slot)") {
    const auto cfg = test::mesh4_config();
    const Graph g = build_graph(cfg);
    const auto a = sample_state(cfg, g, 42, 7);
    const auto b = sample_state(cfg, g, 42, 7);
    CHECK(a.alpha == b.alpha);
    CHECK(a.label == b.label);
    CHECK_FALSE(sample_state(cfg, g, 42, 8).alpha == a.alpha);
    CHECK_FALSE(sample_state(cfg, g, 43, 7).alpha == a.alpha);
}

TEST_CASE("sampled factors follow the state table") {
    const auto cfg = test::mesh4_config();
    const Graph g = build_graph(cfg);
    const auto s = sample_state(cfg, g, 5, 11);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == j) {
                CHECK(s.label(i, j) == -1);
                CHECK(s.alpha(i, j) == 0);
            } else {
                REQUIRE(s.label(i, j) >= 0);
                CHECK(s.alpha(i, j) == cfg.channel_states[s.label(i, j)].alpha);
            }
        }
    }
}

TEST_CASE("degenerate distribution pins every link to its only state") {
    auto cfg = test::mesh4_config();
    cfg.channel_states = {{"U", 0, 1.0}};
    const Graph g = build_graph(cfg);
    const auto s = sample_state(cfg, g, 9, 0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(s.alpha(i, j) == 0);
}

TEST_CASE("empirical state frequencies match the configured probabilities") {
    const auto cfg = test::mesh4_config();
    const Graph g = build_graph(cfg);
    const int draws = 100000;
    std::vector<int> count01(4, 0), count23(4, 0);
    for (int t = 0; t < draws; ++t) {
        const auto s = sample_state(cfg, g, 1234, t);
        ++count01[s.label(0, 1)];
        ++count23[s.label(2, 3)];
    }
    for (const auto& count : {count01, count23}) {
        double chi2 = 0;
        for (int k = 0; k < 4; ++k) {
            const double freq = count[k] / static_cast<double>(draws);
            CHECK(freq == doctest::Approx(0.25).epsilon(0.04));  // +-0.01 absolute
            const double expected = draws * 0.25;
            chi2 += (count[k] - expected) * (count[k] - expected) / expected;
        }
        CHECK(chi2 < 16.27);  // chi-square 99.9% quantile, 3 dof
    }
}

TEST_CASE("default rate passes all three structural properties") {
    const RateFunction rate(RateKind::LogLinear, 6, 3);
    const std::vector<double> alphas{0, 1, 2, 3};
    const std::vector<double> powers{0, 1, 2, 3, 4, 5, 6};
    const auto rep = check_rate_properties(separable_matrix_rate(rate), alphas, powers);
    CHECK(rep.all_ok());
    CHECK(rep.delta_witness <= 3.0 + 1e-12);
    CHECK(rep.delta_witness > 0);
}

TEST_CASE("zero-power grid holds the linear bound with equality") {
    const RateFunction rate(RateKind::LogLinear, 6, 3);
    const std::vector<double> alphas{0, 3};
    const std::vector<double> powers{0};
    const auto rep = check_rate_properties(separable_matrix_rate(rate), alphas, powers);
    CHECK(rep.all_ok());
    CHECK(rep.delta_witness == 0);
}

TEST_CASE("a superlinear rate fails the linear power bound") {
    const MatrixRate exp_rate = [](const Mat<double>&, const Mat<double>& p,
                                   const Mat<uint8_t>&, int i, int j) {
        return std::exp(p(i, j));
    };
    const std::vector<double> alphas{1, 3};
    const std::vector<double> powers{0, 1, 2, 3, 4, 5, 6};
    const auto rep = check_rate_properties(exp_rate, alphas, powers);
    CHECK_FALSE(rep.linear_bound_ok);
}

TEST_CASE("a rate boosted by another link's power fails cross-link monotonicity") {
    const RateFunction rate(RateKind::LogLinear, 6, 3);
    const MatrixRate coupled = [rate](const Mat<double>& a, const Mat<double>& p,
                                      const Mat<uint8_t>& gm, int i, int j) {
        double base = rate.value(a(i, j), p(i, j), gm(i, j));
        if (i == 0 && j == 1 && gm(1, 2)) base += 0.1 * p(1, 2);
        return base;
    };
    const std::vector<double> alphas{1, 3};
    const std::vector<double> powers{0, 2, 4, 6};
    const auto rep = check_rate_properties(coupled, alphas, powers);
    CHECK_FALSE(rep.cross_link_monotone_ok);
    CHECK(rep.idle_power_inert_ok);  // coupling is gated on the connection
}

TEST_CASE("a rate sensitive to idle power fails the inertness check") {
    const RateFunction rate(RateKind::LogLinear, 6, 3);
    const MatrixRate leaky = [rate](const Mat<double>& a, const Mat<double>& p,
                                    const Mat<uint8_t>& gm, int i, int j) {
        double base = rate.value(a(i, j), p(i, j), gm(i, j));
        if (i == 0 && j == 1 && !gm(1, 2)) base += 0.05 * p(1, 2);
        return base;
    };
    const std::vector<double> alphas{1, 3};
    const std::vector<double> powers{0, 2, 4, 6};
    const auto rep = check_rate_properties(leaky, alphas, powers);
    CHECK_FALSE(rep.idle_power_inert_ok);
    CHECK(rep.cross_link_monotone_ok);
}
