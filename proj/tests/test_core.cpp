#include "oracles.hpp"

#include <pbsched/bars/bars.hpp>
#include <pbsched/bars/rng.hpp>
#include <pbsched/core/instance_json.hpp>
#include <pbsched/core/metrics.hpp>
#include <pbsched/policies/policy_config.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

using namespace pbsched;

namespace {

ScheduleOutcome outcome_with(std::vector<double> completion) {
    ScheduleOutcome out;
    out.completion = std::move(completion);
    out.delays.assign(out.completion.size() * out.completion.size(), 0.0);
    return out;
}

} // namespace

TEST(ProgressBar, UninformativeJumpsOnlyAtCompletion) {
    const auto bar = StepProgressBar::uninformative();
    EXPECT_EQ(bar.granularity(), 0u);
    EXPECT_DOUBLE_EQ(bar.evaluate(0.0), 0.0);
    EXPECT_DOUBLE_EQ(bar.evaluate(0.999999), 0.0);
    EXPECT_DOUBLE_EQ(bar.evaluate(1.0), 1.0);
}

TEST(ProgressBar, StepValues) {
    const StepProgressBar bar({0.25, 0.5}, {0.1, 0.4, 1.0});
    EXPECT_DOUBLE_EQ(bar.evaluate(0.0), 0.0);
    EXPECT_DOUBLE_EQ(bar.evaluate(0.1), 0.25);  // closed on the left
    EXPECT_DOUBLE_EQ(bar.evaluate(0.39), 0.25);
    EXPECT_DOUBLE_EQ(bar.evaluate(0.4), 0.5);
    EXPECT_DOUBLE_EQ(bar.evaluate(1.0), 1.0);
    EXPECT_EQ(bar.jumps_at(0.05), 0u);
    EXPECT_EQ(bar.jumps_at(0.4), 2u);
    EXPECT_DOUBLE_EQ(bar.level_after(0), 0.0);
    EXPECT_DOUBLE_EQ(bar.level_after(2), 0.5);
    EXPECT_DOUBLE_EQ(bar.level_after(3), 1.0);
}

TEST(ProgressBar, RejectsInvalidShapes) {
    EXPECT_THROW(StepProgressBar({0.5}, {0.5}), std::invalid_argument);             // wrong count
    EXPECT_THROW(StepProgressBar({0.5}, {0.6, 0.9}), std::invalid_argument);        // last != 1
    EXPECT_THROW(StepProgressBar({0.5, 0.6}, {0.6, 0.5, 1.0}), std::invalid_argument);  // unsorted
    EXPECT_THROW(StepProgressBar({0.5}, {-0.1, 1.0}), std::invalid_argument);
    EXPECT_THROW(StepProgressBar({0.5}, {1.2, 1.0}), std::invalid_argument);
    EXPECT_THROW(StepProgressBar({0.6, 0.6}, {0.1, 0.2, 1.0}), std::invalid_argument);
    EXPECT_THROW(StepProgressBar({0.0}, {0.1, 1.0}), std::invalid_argument);
}

TEST(ProgressBar, GeneratedBarsAreMonotone) {
    bars::Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t g = 1 + rng.below(20);
        const auto bar = trial % 2 ? bars::poisson_bar(g, rng) : bars::binomial_bar(g, rng);
        double prev = bar.evaluate(0.0);
        if (bar.threshold(0) > 0.0) {
            EXPECT_DOUBLE_EQ(prev, 0.0);
        }
        for (int k = 1; k <= 100; ++k) {
            const double v = bar.evaluate(k / 100.0);
            EXPECT_GE(v, prev);
            prev = v;
        }
        EXPECT_DOUBLE_EQ(bar.evaluate(1.0), 1.0);
    }
}

TEST(Instance, Validation) {
    EXPECT_THROW(Instance({1.0, 0.0}, {StepProgressBar::uninformative(), StepProgressBar::uninformative()}),
                 std::invalid_argument);
    EXPECT_THROW(Instance({1.0}, {}), std::invalid_argument);
    EXPECT_THROW(Instance::uninformative({1.0}, 0), std::invalid_argument);
    EXPECT_THROW(Instance({1.0, 2.0}, {bars::accurate_bar(0.5), bars::accurate_bar(0.4)}), std::invalid_argument);
}

TEST(Instance, SubsetReindexes) {
    const Instance inst = bars::signal_instance({1.0, 2.0, 3.0}, 0.5, std::vector<double>{0.1, 0.2, 0.3});
    const std::vector<JobId> kept{2, 0};
    const Instance sub = inst.subset(kept);
    ASSERT_EQ(sub.size(), 2u);
    EXPECT_DOUBLE_EQ(sub.p(0), 3.0);
    EXPECT_DOUBLE_EQ(sub.p(1), 1.0);
    EXPECT_DOUBLE_EQ(sub.bar(0).threshold(0), 0.3);
    EXPECT_EQ(sub.jobs()[1].id, 1u);
}

TEST(OptCost, Examples) {
    EXPECT_DOUBLE_EQ(opt_cost(Instance::uninformative({1, 2, 3})), 10.0);
    EXPECT_DOUBLE_EQ(opt_cost(Instance::uninformative({5})), 5.0);
    const double tau = 0.37;
    EXPECT_DOUBLE_EQ(opt_cost(Instance::uninformative({1, 1 + tau})), 3 + tau);
    EXPECT_THROW(opt_cost(Instance{}), std::invalid_argument);
}

TEST(OptCost, MatchesBruteForce) {
    bars::Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng.below(7);
        std::vector<double> p(n);
        for (auto& x : p) {
            x = 0.1 + 10.0 * rng.uniform();
        }
        EXPECT_NEAR(opt_cost(Instance::uninformative(p)), oracle::brute_force_opt(p), 1e-9);
    }
}

TEST(OptCost, MultiMachineWrapsSortedJobs) {
    // Two machines, sorted sizes 1,2,3,4: machine A runs 1 then 3, B runs 2 then 4.
    EXPECT_DOUBLE_EQ(opt_cost(Instance::uninformative({4, 3, 2, 1}, 2)), 1 + 2 + 4 + 6);
    EXPECT_DOUBLE_EQ(opt_cost(Instance::uninformative({1, 2}, 3)), 3.0);
}

TEST(TotalCost, Examples) {
    EXPECT_DOUBLE_EQ(total_cost(outcome_with({1.5, 3.0})), 4.5);
    EXPECT_DOUBLE_EQ(total_cost(outcome_with({5.0})), 5.0);
    const auto rr = policies::simulate_baseline(Instance::uninformative({1, 2}), policies::Baseline::RR);
    EXPECT_NEAR(total_cost(rr), 5.0, 1e-12);
}

TEST(DelayDecomposition, RoundRobinTwoJobs) {
    const Instance inst = Instance::uninformative({1, 2});
    auto out = policies::simulate_baseline(inst, policies::Baseline::RR);
    EXPECT_NEAR(out.delay(0, 1) + out.delay(1, 0), 2.0, 1e-12);
    EXPECT_TRUE(check_delay_decomposition(out, inst, 1e-9));
    out.delay(0, 1) += 0.5;
    EXPECT_FALSE(check_delay_decomposition(out, inst, 1e-9));
}

TEST(DelayDecomposition, SingleJob) {
    const Instance inst = Instance::uninformative({4});
    const auto out = policies::simulate_baseline(inst, policies::Baseline::SETF);
    EXPECT_DOUBLE_EQ(total_cost(out), 4.0);
    EXPECT_TRUE(check_delay_decomposition(out, inst, 1e-9));
}

TEST(ErrorTerms, ExactSignalsGiveZero) {
    const Instance inst = Instance::uninformative({3, 1, 2});
    const std::vector<double> betas(3, 0.4);
    const auto e = error_terms(inst, 0.4, betas);
    EXPECT_DOUBLE_EQ(e.timing, 0.0);
    EXPECT_DOUBLE_EQ(e.inversion, 0.0);
    EXPECT_DOUBLE_EQ(e.l1, 0.0);
}

TEST(ErrorTerms, Examples) {
    const Instance inst = Instance::uninformative({1, 2});
    auto e = error_terms(inst, 0.5, std::vector<double>{0.9, 0.1});
    EXPECT_NEAR(e.timing, 0.4, 1e-12);
    EXPECT_NEAR(e.inversion, 1.0, 1e-12);
    EXPECT_NEAR(e.l1, 1.2, 1e-12);
    e = error_terms(inst, 0.5, std::vector<double>{0.4, 0.6});
    EXPECT_NEAR(e.timing, -0.1, 1e-12);
    EXPECT_NEAR(e.inversion, 0.0, 1e-12);
    EXPECT_NEAR(e.l1, 0.3, 1e-12);
}

TEST(ErrorTerms, MatchesRankOracle) {
    bars::Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(12);
        std::vector<double> p(n), beta(n);
        for (std::size_t j = 0; j < n; ++j) {
            // coarse sizes so that ties occur
            p[j] = 1.0 + static_cast<double>(rng.below(5));
            beta[j] = rng.uniform();
        }
        const double alpha = rng.uniform();
        const auto got = error_terms(Instance::uninformative(p), alpha, beta);
        const auto want = oracle::error_terms(p, alpha, beta);
        EXPECT_NEAR(got.timing, want.timing, 1e-9);
        EXPECT_NEAR(got.inversion, want.inversion, 1e-9);
        EXPECT_NEAR(got.l1, want.l1, 1e-9);
    }
}

TEST(ErrorTerms, RejectsBadBetas) {
    const Instance inst = Instance::uninformative({1, 2});
    EXPECT_THROW(error_terms(inst, 0.5, std::vector<double>{0.5}), std::invalid_argument);
    EXPECT_THROW(error_terms(inst, 0.5, std::vector<double>{0.5, 1.5}), std::invalid_argument);
}

TEST(InstanceJson, RoundTrip) {
    const Instance inst = bars::signal_instance({1.5, 2.25}, 0.5, std::vector<double>{0.25, 1.0}, 2);
    const auto doc = instance_to_json(inst);
    EXPECT_EQ(doc["machines"], 2);
    EXPECT_EQ(doc["levels"].size(), 1u);
    EXPECT_EQ(doc["jobs"][0]["thresholds"].size(), 2u);
    const Instance back = instance_from_json(doc);
    EXPECT_EQ(back.sizes(), inst.sizes());
    EXPECT_EQ(back.bars(), inst.bars());
    EXPECT_EQ(back.machines(), 2);

    const auto path = std::filesystem::temp_directory_path() / "pbsched_roundtrip.json";
    save_instance(path, inst);
    EXPECT_EQ(load_instance(path).bars(), inst.bars());
    std::filesystem::remove(path);
}

TEST(InstanceJson, RejectsMalformedDocuments) {
    using nlohmann::json;
    EXPECT_THROW(instance_from_json(json::parse(R"({"levels":[],"jobs":[{"p":1}]})")), std::invalid_argument);
    EXPECT_THROW(instance_from_json(json::parse(R"({"machines":1,"levels":[0.5],"jobs":[{"p":1,"thresholds":[1]}]})")),
                 std::invalid_argument);
    EXPECT_THROW(
        instance_from_json(json::parse(R"({"machines":1,"levels":[0.5],"jobs":[{"p":-1,"thresholds":[0.5,1]}]})")),
        std::invalid_argument);
    EXPECT_THROW(instance_from_json(json::parse(R"([1,2])")), std::invalid_argument);
}

TEST(EventLog, TabSeparatedTwelveDigits) {
    std::ostringstream os;
    write_event_log(os, {{1.0 / 3.0, EventKind::Signal, 2, 1}, {2.0, EventKind::Completion, 0, 0}});
    EXPECT_EQ(os.str(), "0.333333333333\tsignal\t2\t1\n2\tcompletion\t0\t0\n");
}
