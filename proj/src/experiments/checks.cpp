#include <pbsched/experiments/checks.hpp>

#include <pbsched/bars/bars.hpp>
#include <pbsched/combining/combining.hpp>
#include <pbsched/core/metrics.hpp>
#include <pbsched/experiments/generators.hpp>
#include <pbsched/policies/policy_config.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pbsched::experiments {

namespace {

using policies::PolicyConfig;

constexpr double kRel = 1e-9;

std::vector<double> uniform_sizes(bars::Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<double> sizes(n);
    for (auto& p : sizes) {
        p = lo + (hi - lo) * rng.uniform();
    }
    return sizes;
}

std::vector<double> uniform_betas(bars::Rng& rng, std::size_t n) {
    std::vector<double> betas(n);
    for (auto& b : betas) {
        b = rng.uniform();
    }
    return betas;
}

std::vector<JobId> random_order(bars::Rng& rng, std::size_t n) {
    std::vector<JobId> order(n);
    std::iota(order.begin(), order.end(), JobId{0});
    for (std::size_t i = n; i > 1; --i) {
        std::swap(order[i - 1], order[rng.below(i)]);
    }
    return order;
}

// Tracks the first failure of a property.
struct Tally {
    CheckResult result;
    std::size_t runs = 0;

    Tally(std::string property, std::uint64_t seed) {
        result.property = std::move(property);
        result.seed = seed;
    }

    void expect(bool ok, const std::function<std::string()>& what) {
        ++runs;
        if (!ok && result.passed) {
            result.passed = false;
            result.detail = what();
        }
    }

    CheckResult finish() {
        if (result.passed) {
            result.detail = std::to_string(runs) + " runs";
        }
        return result;
    }
};

std::string describe(const PolicyConfig& config) {
    const auto params = policies::describe_params(config);
    return policies::variant_name(config) + (params.empty() ? "" : "[" + params + "]");
}

std::vector<CheckResult> decomposition_suite(std::uint64_t seed) {
    Tally identity("delay decomposition identity", seed);
    Tally bounds("0 <= d(i,j) <= min(p_i, C_j)", seed);
    bars::Rng rng(seed);
    for (std::size_t run = 0; run < 120; ++run) {
        const std::size_t n = 2 + rng.below(9);
        auto sizes = uniform_sizes(rng, n, 0.1, 10.0);
        const double alpha = 0.05 + 0.95 * rng.uniform();
        const auto betas = uniform_betas(rng, n);
        const Instance signals = bars::signal_instance(sizes, alpha, betas);
        const std::size_t g = 1 + rng.below(6);
        const Instance stochastic =
            bars::stochastic_instance(sizes, g, bars::StochasticModel::Poisson, seed, run, 17);

        std::vector<std::pair<const Instance*, PolicyConfig>> cases;
        cases.emplace_back(&signals, PolicyConfig{policies::RrConfig{}});
        cases.emplace_back(&signals, PolicyConfig{policies::SetfConfig{}});
        cases.emplace_back(&signals, PolicyConfig{policies::SptConfig{}});
        cases.emplace_back(&signals, PolicyConfig{policies::BlindFollowConfig{}});
        cases.emplace_back(&signals, PolicyConfig{policies::Alg1Config{alpha, 0.05 + 0.95 * rng.uniform()}});
        cases.emplace_back(&signals, PolicyConfig{policies::FollowPermutationConfig{random_order(rng, n)}});
        cases.emplace_back(
            &signals, PolicyConfig{policies::TimeSharingConfig{
                          0.1 + 0.8 * rng.uniform(),
                          std::make_shared<PolicyConfig>(PolicyConfig{policies::Alg1Config{alpha, 0.5}}),
                          std::make_shared<PolicyConfig>(PolicyConfig{policies::RrConfig{}})}});
        cases.emplace_back(&stochastic, PolicyConfig{policies::RepeatedEtcConfig{1 + rng.below(g + 1), g}});
        cases.emplace_back(&stochastic, PolicyConfig{policies::GenericEtcConfig{}});

        for (const auto& [inst, config] : cases) {
            const auto outcome = policies::simulate(*inst, config, {false, false});
            const double alg = total_cost(outcome);
            identity.expect(check_delay_decomposition(outcome, *inst, kRel), [&] {
                std::ostringstream os;
                os << describe(config) << " run " << run << ": ALG=" << alg
                   << " decomposition=" << delay_decomposition_total(outcome, *inst);
                return os.str();
            });
            bool ok = true;
            for (JobId i = 0; i < n; ++i) {
                for (JobId j = 0; j < n; ++j) {
                    if (i == j) {
                        continue;
                    }
                    const double d = outcome.delay(i, j);
                    const double slack = 1e-9 * std::max(1.0, outcome.completion[j]);
                    ok = ok && d >= -slack && d <= inst->p(i) + slack && d <= outcome.completion[j] + slack;
                }
            }
            bounds.expect(ok, [&] { return describe(config) + " run " + std::to_string(run); });
        }
    }
    return {identity.finish(), bounds.finish()};
}

std::vector<CheckResult> consistency_suite(std::uint64_t seed) {
    Tally tally("consistency ALG <= (1+alpha) OPT with accurate bars", seed);
    for (double alpha : {0.25, 0.5, 0.9}) {
        for (std::size_t t = 0; t < 10; ++t) {
            const auto base = gen_pareto_instance(30, 1.1, bars::derive_seed(seed, t, 1));
            const Instance inst = bars::accurate_instance(base.sizes(), alpha);
            const double opt = opt_cost(inst);
            std::vector<PolicyConfig> configs{PolicyConfig{policies::BlindFollowConfig{}}};
            for (double rho : {0.1, 0.5, 1.0}) {
                configs.push_back(PolicyConfig{policies::Alg1Config{alpha, rho}});
            }
            for (const auto& config : configs) {
                const double alg = total_cost(policies::simulate(inst, config, {false, false}));
                tally.expect(alg <= (1.0 + alpha) * opt * (1.0 + kRel), [&] {
                    return describe(config) + " trial " + std::to_string(t) + " ratio " + std::to_string(alg / opt);
                });
            }
            for (int m : {2, 3}) {
                const Instance multi = inst.with_machines(m);
                const double alg = total_cost(policies::simulate_multimachine(multi, alpha, m));
                const double opt_m = opt_cost(multi);
                tally.expect(alg <= (1.0 + alpha) * opt_m * (1.0 + kRel), [&] {
                    return "MultiMachinePrefExec m=" + std::to_string(m) + " trial " + std::to_string(t);
                });
            }
        }
    }
    return {tally.finish()};
}

std::vector<CheckResult> robustness_suite(std::uint64_t seed) {
    Tally alg1("Alg1 ALG <= (1 + 1/(rho alpha)) OPT", seed);
    Tally multi("MultiMachine ALG <= (1 + 1/alpha) OPT", seed);
    Tally rr("RR ALG <= 2 OPT", seed);
    const double alpha = 0.5;
    for (std::size_t t = 0; t < 50; ++t) {
        const auto base = gen_pareto_instance(20, 1.1, bars::derive_seed(seed, t, 1));
        bars::Rng rng(bars::derive_seed(seed, t, 2));
        const Instance inst = bars::signal_instance(base.sizes(), alpha, uniform_betas(rng, base.size()));
        const double opt = opt_cost(inst);
        for (double rho : {0.5, 1.0}) {
            const double alg = total_cost(policies::simulate_alg1(inst, alpha, rho));
            alg1.expect(alg <= (1.0 + 1.0 / (rho * alpha)) * opt * (1.0 + kRel),
                        [&] { return "rho=" + std::to_string(rho) + " trial " + std::to_string(t); });
        }
        const Instance two = inst.with_machines(2);
        const double alg_m = total_cost(policies::simulate_multimachine(two, alpha, 2));
        multi.expect(alg_m <= (1.0 + 1.0 / alpha) * opt_cost(two) * (1.0 + kRel),
                     [&] { return "trial " + std::to_string(t); });
        const double alg_rr = total_cost(policies::simulate_baseline(inst, policies::Baseline::RR));
        rr.expect(alg_rr <= 2.0 * opt * (1.0 + kRel), [&] { return "trial " + std::to_string(t); });
    }
    return {alg1.finish(), multi.finish(), rr.finish()};
}

std::vector<CheckResult> combining_suite(std::uint64_t seed) {
    Tally selection("all-pairs selection equals the true argmin", seed);
    Tally regret("ALG <= A(chosen) + 2 m n p_max", seed);
    for (std::size_t t = 0; t < 30; ++t) {
        bars::Rng rng(bars::derive_seed(seed, t, 3));
        const std::size_t n = 2 + rng.below(9);
        const Instance inst = Instance::uninformative(uniform_sizes(rng, n, 0.1, 10.0));
        const auto order = random_order(rng, n);
        const std::vector<combining::Candidate> candidates{
            {PolicyConfig{policies::RrConfig{}}, combining::rr_oracle()},
            {PolicyConfig{policies::FollowPermutationConfig{order}}, combining::permutation_oracle(order)},
        };
        std::vector<double> totals;
        std::vector<double> costs;
        for (const auto& c : candidates) {
            const auto outcome = policies::simulate(inst, c.policy, {false, false});
            costs.push_back(total_cost(outcome));
            double pairwise = 0.0;
            for (JobId i = 0; i < n; ++i) {
                for (JobId j = 0; j < n; ++j) {
                    pairwise += i == j ? 0.0 : outcome.delay(i, j);
                }
            }
            totals.push_back(pairwise);
        }
        // Skip near-ties, where rounding may legitimately flip the choice.
        const double gap = std::abs(totals[0] - totals[1]);
        if (gap > 1e-9 * std::max(totals[0], totals[1])) {
            combining::CombineOptions all;
            all.sampling = combining::PairSampling::AllPairs;
            const auto chosen = combining::combine(inst, candidates, all).chosen;
            const std::size_t truth = totals[0] <= totals[1] ? 0 : 1;
            selection.expect(chosen == truth, [&] { return "instance " + std::to_string(t); });
        }
        combining::CombineOptions sampled;
        sampled.m_pairs = 1 + rng.below(4);
        sampled.seed = bars::derive_seed(seed, t, 4);
        const auto result = combining::combine(inst, candidates, sampled);
        const auto sizes = inst.sizes();
        const double p_max = *std::max_element(sizes.begin(), sizes.end());
        const double bound = costs[result.chosen] + 2.0 * static_cast<double>(sampled.m_pairs * n) * p_max;
        regret.expect(total_cost(result.outcome) <= bound * (1.0 + kRel),
                      [&] { return "instance " + std::to_string(t); });
    }
    return {selection.finish(), regret.finish()};
}

std::vector<CheckResult> etc_suite(std::uint64_t seed) {
    const auto report = check_high_probability_etc(1000, 1000, 0.5, 10, 20, seed);
    CheckResult r;
    r.property = "RepeatedETC ratio <= 1 + 3 eps + 4k/g with high probability";
    r.seed = seed;
    r.passed = report.passed();
    std::ostringstream os;
    os << report.violations << "/" << report.trials << " violations, allowed rate "
       << report.probability_bound + report.slack << ", max ratio " << report.max_ratio;
    r.detail = os.str();
    return {r};
}

} // namespace

HighProbabilityReport check_high_probability_etc(std::size_t g, std::size_t k, double epsilon, std::size_t n,
                                                 std::size_t trials, std::uint64_t seed) {
    if (k == 0 || k > g) {
        throw std::invalid_argument("high-probability check needs 1 <= k <= g");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in [0,1]");
    }
    HighProbabilityReport report;
    report.trials = trials;
    report.ratio_bound = 1.0 + 3.0 * epsilon + 4.0 * static_cast<double>(k) / static_cast<double>(g);
    report.probability_bound =
        std::min(1.0, 2.0 * static_cast<double>(n) * std::exp(-epsilon * epsilon * static_cast<double>(k) / 7.0));
    report.slack = trials ? 3.0 * std::sqrt(report.probability_bound * (1.0 - report.probability_bound) /
                                            static_cast<double>(trials))
                          : 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto base = gen_pareto_instance(n, 1.1, bars::derive_seed(seed, t, 1));
        const Instance inst =
            bars::stochastic_instance(base.sizes(), g, bars::StochasticModel::Poisson, seed, t, 2);
        const double ratio = total_cost(policies::simulate_repeated_etc(inst, k, g)) / opt_cost(inst);
        report.max_ratio = std::max(report.max_ratio, ratio);
        if (ratio > report.ratio_bound) {
            ++report.violations;
        }
    }
    return report;
}

std::vector<std::string> verify_suites() {
    return {"decomposition", "consistency", "robustness", "combining", "etc", "all"};
}

std::vector<CheckResult> run_verify_suite(std::string_view suite, std::uint64_t seed) {
    if (suite == "decomposition") {
        return decomposition_suite(seed);
    }
    if (suite == "consistency") {
        return consistency_suite(seed);
    }
    if (suite == "robustness") {
        return robustness_suite(seed);
    }
    if (suite == "combining") {
        return combining_suite(seed);
    }
    if (suite == "etc") {
        return etc_suite(seed);
    }
    if (suite == "all") {
        std::vector<CheckResult> all;
        for (const auto& name : verify_suites()) {
            if (name != "all") {
                auto part = run_verify_suite(name, seed);
                all.insert(all.end(), part.begin(), part.end());
            }
        }
        return all;
    }
    throw std::invalid_argument("unknown verify suite '" + std::string(suite) + "'");
}

} // namespace pbsched::experiments
