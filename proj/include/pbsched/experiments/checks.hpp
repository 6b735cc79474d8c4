#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pbsched::experiments {

struct HighProbabilityReport {
    std::size_t trials = 0;
    std::size_t violations = 0;
    double ratio_bound = 0.0;        ///< 1 + 3ε + 4k/g
    double probability_bound = 0.0;  ///< min(1, 2n·exp(−ε²k/7))
    double slack = 0.0;              ///< three binomial standard errors at probability_bound
    double max_ratio = 0.0;
    double violation_rate() const { return trials ? static_cast<double>(violations) / static_cast<double>(trials) : 0.0; }
    bool passed() const { return violation_rate() <= probability_bound + slack; }
};

/// Runs RepeatedETC(k, g) on `trials` Pareto-1.1 instances of n jobs with
/// Poisson bars and counts the runs whose ratio exceeds 1 + 3ε + 4k/g.
/// Requires 1 ≤ k ≤ g and ε ∈ [0,1].
HighProbabilityReport check_high_probability_etc(std::size_t g, std::size_t k, double epsilon, std::size_t n,
                                                 std::size_t trials, std::uint64_t seed);

struct CheckResult {
    std::string property;
    bool passed = true;
    std::string detail;   ///< first counterexample, or a short summary
    std::uint64_t seed = 0;
};

/// decomposition, consistency, robustness, combining, etc, all.
std::vector<std::string> verify_suites();

/// Runs one invariant suite. Throws std::invalid_argument for an unknown name.
std::vector<CheckResult> run_verify_suite(std::string_view suite, std::uint64_t seed);

} // namespace pbsched::experiments
