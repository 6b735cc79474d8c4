#pragma once

#include <pbsched/sim/policy.hpp>

#include <vector>

namespace pbsched::policies {

namespace detail {

/// Equal share of one machine over all alive jobs.
void round_robin_rates(const sim::SimState& state, sim::RateVector& rates);

/// Equal share of one machine over the alive jobs with the least elapsed
/// time. Returns the Merge timer at which the group reaches the next
/// elapsed level, if any.
std::optional<sim::PolicyTimer> setf_rates(const sim::SimState& state, sim::RateVector& rates);

} // namespace detail

/// Round-Robin: every alive job runs at rate 1/|alive|.
class RoundRobinPolicy final : public sim::Policy {
public:
    std::string name() const override { return "RR"; }
    std::optional<sim::PolicyTimer> decide(const sim::SimState& state, sim::RateVector& rates) override;
};

/// Shortest Elapsed Time First.
class SetfPolicy final : public sim::Policy {
public:
    std::string name() const override { return "SETF"; }
    std::optional<sim::PolicyTimer> decide(const sim::SimState& state, sim::RateVector& rates) override;
};

/// Runs jobs one at a time in a fixed order (a permutation prediction).
class FollowPermutationPolicy final : public sim::Policy {
public:
    explicit FollowPermutationPolicy(std::vector<JobId> order);
    std::string name() const override { return "FollowPermutation"; }
    void start(const Instance& instance, const sim::SimState& state) override;
    std::optional<sim::PolicyTimer> decide(const sim::SimState& state, sim::RateVector& rates) override;

private:
    std::vector<JobId> order_;
    std::size_t cursor_ = 0;
};

/// Shortest Processing Time first (Smith's rule). Reads processing times,
/// so the instance must be clairvoyant.
class SptPolicy final : public sim::Policy {
public:
    std::string name() const override { return "SPT"; }
    void start(const Instance& instance, const sim::SimState& state) override;
    std::optional<sim::PolicyTimer> decide(const sim::SimState& state, sim::RateVector& rates) override;

private:
    std::vector<JobId> order_;
    std::size_t cursor_ = 0;
};

} // namespace pbsched::policies
