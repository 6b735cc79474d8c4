#include <pbsched/bars/bars.hpp>
#include <pbsched/bars/rng.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace pbsched;

TEST(Rng, DeterministicAndDistinctStreams) {
    bars::Rng a(42);
    bars::Rng b(42);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a.uniform(), b.uniform());
    }
    std::set<std::uint64_t> seeds;
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        for (std::uint64_t purpose = 0; purpose < 4; ++purpose) {
            for (std::uint64_t job = 0; job < 5; ++job) {
                seeds.insert(bars::derive_seed(7, trial, purpose, job));
            }
        }
    }
    EXPECT_EQ(seeds.size(), 50u * 4u * 5u);
    EXPECT_NE(bars::derive_seed(1, 0, 0), bars::derive_seed(2, 0, 0));
    EXPECT_EQ(bars::kRngAlgorithm, "mt19937_64");
}

TEST(Rng, Moments) {
    bars::Rng rng(3);
    const int n = 200000;
    double su = 0, se = 0, sn = 0, sn2 = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        su += u;
        se += rng.exponential(4.0);
        const double z = rng.normal(2.0, 3.0);
        sn += z;
        sn2 += z * z;
    }
    EXPECT_NEAR(su / n, 0.5, 3 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(se / n, 0.25, 3 * 0.25 / std::sqrt(n));
    const double mean = sn / n;
    EXPECT_NEAR(mean, 2.0, 3 * 3.0 / std::sqrt(n));
    EXPECT_NEAR(std::sqrt(sn2 / n - mean * mean), 3.0, 0.03);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) {
        const auto k = rng.below(7);
        ASSERT_LT(k, 7u);
        ++counts[k];
    }
    for (int c : counts) {
        EXPECT_NEAR(c, 10000, 5 * std::sqrt(10000 * 6.0 / 7.0));
    }
}

TEST(SignalBars, Examples) {
    const auto bar = bars::signal_bar(0.5, 0.3);
    EXPECT_EQ(bar.granularity(), 1u);
    EXPECT_DOUBLE_EQ(bar.threshold(0), 0.3);
    EXPECT_DOUBLE_EQ(bar.evaluate(0.29), 0.0);
    EXPECT_DOUBLE_EQ(bar.evaluate(0.3), 0.5);
    EXPECT_DOUBLE_EQ(bar.evaluate(1.0), 1.0);
    EXPECT_DOUBLE_EQ(bars::accurate_bar(0.7).threshold(0), 0.7);
    EXPECT_THROW(bars::signal_bar(0.0, 0.5), std::invalid_argument);
    EXPECT_THROW(bars::signal_bar(0.5, 1.1), std::invalid_argument);
    EXPECT_THROW(bars::signal_bar(0.5, -0.1), std::invalid_argument);
}

TEST(SignalBars, FromPredictions) {
    using bars::PredictionMode;
    EXPECT_DOUBLE_EQ(bars::prediction_threshold(0.5, 3, 2, PredictionMode::Delayed), 0.75);
    EXPECT_DOUBLE_EQ(bars::prediction_threshold(0.5, -1, 2, PredictionMode::Delayed), 0.0);
    EXPECT_DOUBLE_EQ(bars::prediction_threshold(0.5, 10, 2, PredictionMode::Delayed), 1.0);
    EXPECT_DOUBLE_EQ(bars::prediction_threshold(0.5, 1, 2, PredictionMode::Direct), 0.5);
    EXPECT_DOUBLE_EQ(bars::prediction_threshold(0.5, 3, 2, PredictionMode::Direct), 1.0);
    // Exact predictions in delayed mode put the jump at β = α.
    EXPECT_DOUBLE_EQ(bars::prediction_threshold(0.4, 2.5, 2.5, PredictionMode::Delayed), 0.4);
    const Instance inst = bars::prediction_instance({2, 4}, 0.5, std::vector<double>{3, 2}, PredictionMode::Delayed);
    EXPECT_DOUBLE_EQ(inst.bar(0).threshold(0), 0.75);
    EXPECT_DOUBLE_EQ(inst.bar(1).threshold(0), 0.25);
}

TEST(SignalBars, BarSpecs) {
    EXPECT_EQ(bars::make_bar(bars::AccurateSpec{0.5}, 3.0), bars::accurate_bar(0.5));
    EXPECT_DOUBLE_EQ(bars::make_bar(bars::PredictionSpec{0.5, 3.0}, 2.0).threshold(0), 0.75);
    const auto explicit_bar = bars::make_bar(bars::ExplicitSpec{{0.2, 0.6}, {0.1, 0.5, 1.0}}, 1.0);
    EXPECT_DOUBLE_EQ(explicit_bar.evaluate(0.5), 0.6);
    EXPECT_EQ(bars::make_bar(bars::PoissonSpec{5, 9}, 1.0), bars::make_bar(bars::PoissonSpec{5, 9}, 2.0));
    EXPECT_EQ(bars::make_bar(bars::BinomialSpec{5, 9}, 1.0).granularity(), 5u);
}

TEST(StochasticBars, StructureAndDeterminism) {
    for (std::size_t g : {1, 3, 12, 100}) {
        bars::Rng rng(g);
        for (int t = 0; t < 50; ++t) {
            for (const auto& bar : {bars::poisson_bar(g, rng), bars::binomial_bar(g, rng)}) {
                ASSERT_EQ(bar.granularity(), g);
                ASSERT_TRUE(std::is_sorted(bar.thresholds().begin(), bar.thresholds().end()));
                ASSERT_DOUBLE_EQ(bar.thresholds().back(), 1.0);
                ASSERT_GE(bar.thresholds().front(), 0.0);
                EXPECT_EQ(bar.levels(), bars::uniform_levels(g));
            }
        }
    }
    const auto a = bars::stochastic_instance({1, 2, 3}, 8, bars::StochasticModel::Poisson, 5, 2, 1);
    const auto b = bars::stochastic_instance({1, 2, 3}, 8, bars::StochasticModel::Poisson, 5, 2, 1);
    const auto c = bars::stochastic_instance({1, 2, 3}, 8, bars::StochasticModel::Poisson, 5, 3, 1);
    EXPECT_EQ(a.bars(), b.bars());
    EXPECT_NE(a.bars(), c.bars());
    EXPECT_NE(a.bar(0), a.bar(1));
}

TEST(StochasticBars, PoissonFirstJumpMean) {
    bars::Rng rng(11);
    const int draws = 100000;
    double s = 0;
    for (int i = 0; i < draws; ++i) {
        s += bars::poisson_points(10, rng)[0];
    }
    // Exp(10): mean 0.1, standard error 0.1/√1e5 ≈ 3.2e-4
    EXPECT_NEAR(s / draws, 0.1, 0.003);
}

TEST(StochasticBars, PoissonCountAtProgress) {
    bars::Rng rng(12);
    const int draws = 20000;
    const std::size_t g = 100;
    const double x = 0.3;
    double s = 0;
    double s2 = 0;
    for (int i = 0; i < draws; ++i) {
        const auto pts = bars::poisson_points(g, rng);
        const double c = static_cast<double>(std::upper_bound(pts.begin(), pts.end(), x) - pts.begin());
        s += c;
        s2 += c * c;
    }
    const double mean = s / draws;
    EXPECT_NEAR(mean, 30.0, 3 * std::sqrt(30.0 / draws));
    EXPECT_NEAR(s2 / draws - mean * mean, 30.0, 1.5);
}

TEST(StochasticBars, PoissonGapsAreExponential) {
    // One-sample Kolmogorov–Smirnov against Exp(g), critical value at 1%.
    bars::Rng rng(13);
    const std::size_t g = 20;
    std::vector<double> gaps;
    for (int i = 0; i < 500; ++i) {
        const auto pts = bars::poisson_points(g, rng);
        double prev = 0.0;
        for (double p : pts) {
            gaps.push_back(p - prev);
            prev = p;
        }
    }
    std::sort(gaps.begin(), gaps.end());
    const double n = static_cast<double>(gaps.size());
    double d = 0.0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        const double cdf = 1 - std::exp(-static_cast<double>(g) * gaps[i]);
        d = std::max({d, std::abs(cdf - i / n), std::abs((i + 1) / n - cdf)});
    }
    EXPECT_LT(d, 1.63 / std::sqrt(n));
}

TEST(StochasticBars, BinomialMeans) {
    bars::Rng rng(14);
    const std::size_t g = 9;
    std::vector<double> sums(g, 0.0);
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        const auto bar = bars::binomial_bar(g, rng);
        for (std::size_t h = 0; h < g; ++h) {
            sums[h] += bar.threshold(h);
        }
    }
    for (std::size_t h = 0; h < g; ++h) {
        // k-th order statistic of g uniforms has mean k/(g+1)
        EXPECT_NEAR(sums[h] / draws, (h + 1.0) / (g + 1.0), 0.005);
    }
}

TEST(StochasticBars, ExpectedCommitElapsed) {
    EXPECT_DOUBLE_EQ(bars::expected_commit_elapsed(5, 12, 3.0), 1.25);
    EXPECT_THROW(bars::expected_commit_elapsed(0, 12, 1.0), std::invalid_argument);
    EXPECT_THROW(bars::expected_commit_elapsed(13, 12, 1.0), std::invalid_argument);

    bars::Rng rng(15);
    const std::size_t g = 48;
    const std::size_t k = 8;
    const double p = 2.0;
    const int draws = 50000;
    double s = 0;
    double s2 = 0;
    for (int i = 0; i < draws; ++i) {
        const double tau = std::min(1.0, bars::poisson_points(g, rng)[k - 1]) * p;
        s += tau;
        s2 += tau * tau;
    }
    const double mean = s / draws;
    const double se = std::sqrt((s2 / draws - mean * mean) / draws);
    EXPECT_NEAR(mean, bars::expected_commit_elapsed(k, g, p), 3 * se);
}

TEST(StochasticBars, LevelsAreUniform) {
    const auto levels = bars::uniform_levels(3);
    ASSERT_EQ(levels.size(), 3u);
    EXPECT_DOUBLE_EQ(levels[0], 0.25);
    EXPECT_DOUBLE_EQ(levels[2], 0.75);
}
