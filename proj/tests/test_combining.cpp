#include <pbsched/bars/bars.hpp>
#include <pbsched/bars/rng.hpp>
#include <pbsched/combining/combining.hpp>
#include <pbsched/combining/delay_oracle.hpp>
#include <pbsched/core/metrics.hpp>
#include <pbsched/experiments/generators.hpp>
#include <pbsched/policies/policy_config.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <map>

using namespace pbsched;
using combining::Candidate;
using combining::CombineOptions;
using combining::PairSampling;

namespace {

std::vector<Candidate> rr_and_spt(const Instance& inst) {
    const auto order = spt_order(inst.sizes());
    return {Candidate{policies::PolicyConfig{policies::RrConfig{}}, combining::rr_oracle()},
            Candidate{policies::PolicyConfig{policies::FollowPermutationConfig{order}},
                      combining::permutation_oracle(order)}};
}

double pair_total(const ScheduleOutcome& out) {
    double s = 0.0;
    for (JobId i = 0; i < out.size(); ++i) {
        for (JobId j = i + 1; j < out.size(); ++j) {
            s += out.delay(i, j) + out.delay(j, i);
        }
    }
    return s;
}

} // namespace

TEST(DelayOracle, Examples) {
    EXPECT_DOUBLE_EQ(combining::delay_rr(1, 2), 1.0);
    EXPECT_DOUBLE_EQ(combining::delay_rr(2, 1), 1.0);
    EXPECT_DOUBLE_EQ(combining::delay_blind(0, 1, 0.5, 1, 2, 0.5), 1.0);
    EXPECT_DOUBLE_EQ(combining::delay_blind(1, 2, 0.5, 0, 1, 0.5), 0.5);
    // Equal signal times: the lower id goes first.
    EXPECT_DOUBLE_EQ(combining::delay_blind(0, 1, 0.5, 1, 0.5, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(combining::delay_blind(1, 0.5, 1.0, 0, 1, 0.5), 0.5);
    EXPECT_DOUBLE_EQ(combining::delay_permutation(3, 0, 2), 3.0);
    EXPECT_DOUBLE_EQ(combining::delay_permutation(3, 2, 0), 0.0);
}

TEST(DelayOracle, RrIsSymmetric) {
    bars::Rng rng(5);
    const auto p = experiments::pareto_sizes(20, 1.1, rng);
    const Instance inst = Instance::uninformative(p);
    const auto oracle = combining::rr_oracle();
    for (int k = 0; k < 20; ++k) {
        const JobId i = rng.below(20);
        const JobId j = rng.below(20);
        EXPECT_DOUBLE_EQ(oracle(inst, i, j), oracle(inst, j, i));
    }
}

TEST(DelayOracle, MatchesEngineOnPairs) {
    bars::Rng rng(77);
    const auto rr = combining::rr_oracle();
    const auto blind = combining::blind_oracle();
    for (int t = 0; t < 100; ++t) {
        const std::vector<double> p{0.1 + 5 * rng.uniform(), 0.1 + 5 * rng.uniform()};
        const std::vector<double> beta{rng.uniform(), rng.uniform()};
        const Instance inst = bars::signal_instance(p, 0.5, beta);
        const auto out_rr = policies::simulate_baseline(inst, policies::Baseline::RR);
        const auto out_blind = policies::simulate_blind_follow(inst);
        for (JobId i = 0; i < 2; ++i) {
            const JobId j = 1 - i;
            EXPECT_NEAR(rr(inst, i, j), out_rr.delay(i, j), 1e-9);
            EXPECT_NEAR(blind(inst, i, j), out_blind.delay(i, j), 1e-9);
        }
    }
    const Instance example = bars::signal_instance({1, 2}, 0.5, std::vector<double>{0.5, 0.5});
    EXPECT_DOUBLE_EQ(blind(example, 0, 1), 1.0);
    EXPECT_DOUBLE_EQ(blind(example, 1, 0), 0.5);
}

TEST(DelayOracle, PermutationMatchesEngine) {
    const Instance inst = Instance::uninformative({4, 1, 3, 2});
    const std::vector<JobId> order{2, 0, 3, 1};
    const auto oracle = combining::permutation_oracle(order);
    const auto out = policies::simulate(inst, policies::PolicyConfig{policies::FollowPermutationConfig{order}});
    double sum = 0.0;
    for (JobId i = 0; i < 4; ++i) {
        for (JobId j = 0; j < 4; ++j) {
            if (i != j) {
                EXPECT_NEAR(oracle(inst, i, j), out.delay(i, j), 1e-12);
                sum += oracle(inst, i, j);
            }
        }
    }
    // Prefix sums of the sequence 3, 4, 2, 1.
    EXPECT_NEAR(sum, 3 * 3 + 4 * 2 + 2 * 1, 1e-12);
}

TEST(Combine, AllPairsSelectsPermutation) {
    const Instance inst = Instance::uninformative({1, 2, 3, 4});
    const auto cands = rr_and_spt(inst);
    const auto res = combining::combine(inst, cands, CombineOptions{1, 0, PairSampling::AllPairs});
    ASSERT_EQ(res.scores.size(), 2u);
    EXPECT_DOUBLE_EQ(res.scores[0], 20.0);
    EXPECT_DOUBLE_EQ(res.scores[1], 10.0);
    EXPECT_EQ(res.chosen, 1u);
    EXPECT_EQ(res.pairs.size(), 6u);
    EXPECT_EQ(res.sampled_jobs, (std::vector<JobId>{0, 1, 2, 3}));
    // Every job is sampled, so they run 1, 2, 3, 4 in id order.
    EXPECT_NEAR(total_cost(res.outcome), 20.0, 1e-12);
}

TEST(Combine, TiesGoToFirstCandidate) {
    const Instance inst = Instance::uninformative({1, 1, 1});
    const std::vector<Candidate> cands{
        Candidate{policies::PolicyConfig{policies::RrConfig{}}, combining::rr_oracle()},
        Candidate{policies::PolicyConfig{policies::RrConfig{}}, combining::rr_oracle()}};
    const auto res = combining::combine(inst, cands, CombineOptions{4, 3, PairSampling::WithReplacement});
    EXPECT_EQ(res.chosen, 0u);
}

TEST(Combine, SampledJobsRunFirstThenChosenPolicy) {
    const Instance inst = Instance::uninformative({5, 1, 4, 2, 3, 6});
    const auto cands = rr_and_spt(inst);
    const auto res = combining::combine(inst, cands, CombineOptions{1, 11, PairSampling::WithReplacement});
    ASSERT_EQ(res.pairs.size(), 1u);
    const auto [u, v] = res.pairs[0];
    EXPECT_LT(u, v);
    EXPECT_EQ(res.sampled_jobs, (std::vector<JobId>{u, v}));
    EXPECT_NEAR(res.outcome.completion[u], inst.p(u), 1e-12);
    EXPECT_NEAR(res.outcome.completion[v], inst.p(u) + inst.p(v), 1e-12);
    const double offset = inst.p(u) + inst.p(v);
    std::vector<JobId> rest;
    for (JobId j = 0; j < inst.size(); ++j) {
        if (j != u && j != v) {
            rest.push_back(j);
            EXPECT_GT(res.outcome.completion[j], offset);
        }
    }
    const Instance sub = inst.subset(rest);
    const auto cfg = policies::restrict_to(cands[res.chosen].policy, rest);
    const auto tail = policies::simulate(sub, cfg);
    for (std::size_t k = 0; k < rest.size(); ++k) {
        EXPECT_NEAR(res.outcome.completion[rest[k]], offset + tail.completion[k], 1e-9);
    }
    EXPECT_TRUE(check_delay_decomposition(res.outcome, inst, 1e-9));
}

TEST(Combine, InProofBound) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        bars::Rng rng(seed);
        const auto p = experiments::pareto_sizes(30, 1.1, rng);
        const Instance inst = Instance::uninformative(p);
        const auto cands = rr_and_spt(inst);
        const std::size_t m = 5;
        const auto res = combining::combine(inst, cands, CombineOptions{m, seed, PairSampling::WithReplacement});
        const double chosen_alone = total_cost(policies::simulate(inst, cands[res.chosen].policy));
        const double pmax = *std::max_element(p.begin(), p.end());
        EXPECT_LE(total_cost(res.outcome), chosen_alone + 2.0 * m * p.size() * pmax + 1e-9);
    }
}

TEST(Combine, RegretBoundOnAverage) {
    const std::size_t n = 32;
    double sum_alg = 0.0;
    double sum_bound = 0.0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        bars::Rng rng(1000 + seed);
        const auto p = experiments::pareto_sizes(n, 1.1, rng);
        const Instance inst = Instance::uninformative(p);
        const auto cands = rr_and_spt(inst);
        const auto res = combining::combine(
            inst, cands, CombineOptions{combining::default_pair_count(n, 2), seed, PairSampling::WithReplacement});
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : cands) {
            best = std::min(best, total_cost(policies::simulate(inst, c.policy)));
        }
        const double pmax = *std::max_element(p.begin(), p.end());
        sum_alg += total_cost(res.outcome);
        sum_bound += best + 2.25 * std::pow(n, 5.0 / 3.0) * std::cbrt(std::log(2.0)) * pmax;
    }
    EXPECT_LE(sum_alg, sum_bound);
}

TEST(Combine, SamplingIsDeterministicAndUniform) {
    const Instance inst = Instance::uninformative({1, 2, 3, 4});
    const auto cands = rr_and_spt(inst);
    const CombineOptions opts{2000, 9, PairSampling::WithReplacement};
    const auto a = combining::combine(inst, cands, opts);
    const auto b = combining::combine(inst, cands, opts);
    EXPECT_EQ(a.pairs, b.pairs);
    std::map<std::pair<JobId, JobId>, int> counts;
    for (const auto& pr : a.pairs) {
        ++counts[pr];
    }
    EXPECT_EQ(counts.size(), 6u);
    for (const auto& [pr, c] : counts) {
        // 2000/6 ≈ 333, sd ≈ 16.7
        EXPECT_NEAR(c, 2000.0 / 6.0, 5 * 16.7);
    }
}

TEST(Combine, DefaultPairCount) {
    // ln g = 1 at g = e; g is an integer, so check the formula at g = 3 and
    // the n = 512 example through the closed form.
    EXPECT_EQ(static_cast<std::size_t>(std::ceil(std::pow(512.0, 2.0 / 3.0) / 8.0)), 8u);
    const double want3 = std::ceil(std::pow(512.0, 2.0 / 3.0) * std::cbrt(std::log(3.0)) / 8.0);
    EXPECT_EQ(combining::default_pair_count(512, 3), static_cast<std::size_t>(want3));
    EXPECT_EQ(combining::default_pair_count(2, 2), 1u);
    EXPECT_EQ(combining::default_pair_count(100, 1), 1u);
    EXPECT_EQ(combining::default_pair_count(64, 2), 2u);
}

TEST(Combine, Errors) {
    const Instance one = Instance::uninformative({1.0});
    const auto cands = rr_and_spt(one);
    try {
        combining::combine(one, cands, CombineOptions{});
        FAIL() << "expected an exception";
    } catch (const std::invalid_argument& e) {
        EXPECT_STREQ(e.what(), "need two jobs to sample pairs");
    }
    const Instance two = Instance::uninformative({1.0, 2.0});
    EXPECT_THROW(combining::combine(two, std::span<const Candidate>{}, CombineOptions{}), std::invalid_argument);
    EXPECT_THROW(combining::combine(two, rr_and_spt(two), CombineOptions{0, 0, PairSampling::WithReplacement}),
                 std::invalid_argument);
    EXPECT_THROW(combining::combine(two.with_machines(2), rr_and_spt(two), CombineOptions{}), std::invalid_argument);
}

TEST(Combine, Metadata) {
    const Instance inst = Instance::uninformative({1, 2, 3, 4});
    const auto res = combining::combine(inst, rr_and_spt(inst), CombineOptions{2, 4, PairSampling::WithReplacement});
    const auto meta = res.metadata();
    EXPECT_EQ(meta.at("pairs").size(), 2u);
    EXPECT_EQ(meta.at("scores").size(), 2u);
    EXPECT_EQ(meta.at("chosen").get<std::size_t>(), res.chosen);
    EXPECT_TRUE(meta.contains("sampling"));
}

TEST(Combine, AllPairsSelectsTrueArgmin) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        bars::Rng rng(seed + 40);
        const auto p = experiments::pareto_sizes(12, 1.1, rng);
        std::vector<JobId> random_order(p.size());
        std::iota(random_order.begin(), random_order.end(), 0);
        std::shuffle(random_order.begin(), random_order.end(), rng.engine());
        const Instance inst = Instance::uninformative(p);
        std::vector<Candidate> cands{
            Candidate{policies::PolicyConfig{policies::RrConfig{}}, combining::rr_oracle()},
            Candidate{policies::PolicyConfig{policies::FollowPermutationConfig{random_order}},
                      combining::permutation_oracle(random_order)}};
        const auto res = combining::combine(inst, cands, CombineOptions{1, seed, PairSampling::AllPairs});
        std::vector<double> truth;
        for (const auto& c : cands) {
            truth.push_back(pair_total(policies::simulate(inst, c.policy)));
        }
        const std::size_t want = truth[1] < truth[0] ? 1 : 0;
        EXPECT_EQ(res.chosen, want);
        for (std::size_t h = 0; h < cands.size(); ++h) {
            EXPECT_NEAR(res.scores[h], truth[h], 1e-9 * truth[h]);
        }
    }
}
