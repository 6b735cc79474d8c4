#pragma once

#include <pbsched/combining/delay_oracle.hpp>
#include <pbsched/core/outcome.hpp>
#include <pbsched/policies/policy_config.hpp>

#include <json.hpp>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pbsched::combining {

struct Candidate {
    policies::PolicyConfig policy;
    DelayOracle oracle;
};

enum class PairSampling {
    WithReplacement,  ///< m_pairs uniform draws over unordered pairs
    AllPairs,         ///< every unordered pair once; m_pairs ignored
};

struct CombineOptions {
    std::size_t m_pairs = 1;
    std::uint64_t seed = 0;
    PairSampling sampling = PairSampling::WithReplacement;
};

struct CombineResult {
    ScheduleOutcome outcome;
    std::vector<std::pair<JobId, JobId>> pairs;  ///< sampled pairs, u < v
    std::vector<JobId> sampled_jobs;             ///< ascending, run first
    std::vector<double> scores;                  ///< a(h) per candidate
    std::size_t chosen = 0;
    std::vector<std::string> candidate_names;
    std::vector<bool> exact;
    PairSampling sampling = PairSampling::WithReplacement;

    nlohmann::json metadata() const;
};

/// max(1, ⌈(1/8) · n^{2/3} · (ln g)^{1/3}⌉) for g candidates.
std::size_t default_pair_count(std::size_t n, std::size_t g);

/// Samples pairs, runs the sampled jobs to completion one after another in
/// ascending id order, scores every candidate by the oracle delays over the
/// sampled pairs and runs the lowest-scoring one (first on ties) on the
/// remaining jobs.
///
/// Throws std::invalid_argument("need two jobs to sample pairs") for n < 2,
/// and for an empty candidate list, m_pairs = 0 or a multi-machine instance.
CombineResult combine(const Instance& instance, std::span<const Candidate> candidates,
                      const CombineOptions& options);

} // namespace pbsched::combining
