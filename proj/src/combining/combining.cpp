#include <pbsched/combining/combining.hpp>

#include <pbsched/bars/rng.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbsched::combining {

nlohmann::json CombineResult::metadata() const {
    nlohmann::json doc;
    auto pair_list = nlohmann::json::array();
    for (const auto& [u, v] : pairs) {
        pair_list.push_back({u, v});
    }
    doc["pairs"] = std::move(pair_list);
    doc["sampled_jobs"] = sampled_jobs;
    doc["scores"] = scores;
    doc["chosen"] = chosen;
    doc["candidates"] = candidate_names;
    doc["exact_oracles"] = exact;
    doc["sampling"] = sampling == PairSampling::AllPairs ? "all_pairs" : "with_replacement";
    return doc;
}

std::size_t default_pair_count(std::size_t n, std::size_t g) {
    if (g < 2) {
        return 1;
    }
    const double raw = std::cbrt(static_cast<double>(n) * static_cast<double>(n)) *
                       std::cbrt(std::log(static_cast<double>(g))) / 8.0;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw - 1e-12)));
}

CombineResult combine(const Instance& instance, std::span<const Candidate> candidates,
                      const CombineOptions& options) {
    const std::size_t n = instance.size();
    if (n < 2) {
        throw std::invalid_argument("need two jobs to sample pairs");
    }
    if (candidates.empty()) {
        throw std::invalid_argument("combining needs at least one candidate");
    }
    if (options.sampling == PairSampling::WithReplacement && options.m_pairs == 0) {
        throw std::invalid_argument("combining needs m_pairs >= 1");
    }
    if (instance.machines() != 1) {
        throw std::invalid_argument("combining runs on a single machine");
    }

    CombineResult result;
    result.sampling = options.sampling;
    if (options.sampling == PairSampling::AllPairs) {
        for (JobId u = 0; u < n; ++u) {
            for (JobId v = u + 1; v < n; ++v) {
                result.pairs.emplace_back(u, v);
            }
        }
    } else {
        bars::Rng rng(options.seed);
        for (std::size_t k = 0; k < options.m_pairs; ++k) {
            const JobId u = rng.below(n);
            JobId v = rng.below(n - 1);
            if (v >= u) {
                ++v;
            }
            result.pairs.emplace_back(std::min(u, v), std::max(u, v));
        }
    }

    std::vector<char> sampled(n, 0);
    for (const auto& [u, v] : result.pairs) {
        sampled[u] = 1;
        sampled[v] = 1;
    }
    std::vector<JobId> remaining;
    for (JobId j = 0; j < n; ++j) {
        (sampled[j] ? result.sampled_jobs : remaining).push_back(j);
    }

    for (const auto& c : candidates) {
        double a = 0.0;
        for (const auto& [u, v] : result.pairs) {
            a += c.oracle(instance, u, v) + c.oracle(instance, v, u);
        }
        result.scores.push_back(a);
        result.candidate_names.push_back(policies::variant_name(c.policy));
        result.exact.push_back(c.oracle.exact);
    }
    result.chosen = static_cast<std::size_t>(
        std::min_element(result.scores.begin(), result.scores.end()) - result.scores.begin());

    ScheduleOutcome& out = result.outcome;
    out.completion.assign(n, 0.0);
    out.delays.assign(n * n, 0.0);

    double clock = 0.0;
    for (JobId j : result.sampled_jobs) {
        clock += instance.p(j);
        out.completion[j] = clock;
        out.events.push_back({clock, EventKind::Completion, j, 0});
    }
    // Sampled jobs are complete before anything else starts.
    for (JobId i : result.sampled_jobs) {
        for (JobId j = 0; j < n; ++j) {
            if (i != j && (!sampled[j] || i < j)) {
                out.delay(i, j) = instance.p(i);
            }
        }
    }

    if (!remaining.empty()) {
        const Instance sub = instance.subset(remaining);
        const auto config = policies::restrict_to(candidates[result.chosen].policy, remaining);
        const ScheduleOutcome tail = policies::simulate(sub, config);
        for (std::size_t a = 0; a < remaining.size(); ++a) {
            out.completion[remaining[a]] = clock + tail.completion[a];
            for (std::size_t b = 0; b < remaining.size(); ++b) {
                out.delay(remaining[a], remaining[b]) = tail.delay(a, b);
            }
        }
        for (const auto& e : tail.events) {
            out.events.push_back({clock + e.time, e.kind, e.kind == EventKind::Timer ? e.job : remaining[e.job],
                                  e.detail});
        }
    }
    return result;
}

} // namespace pbsched::combining
