#pragma once

#include <pbsched/sim/policy.hpp>

#include <deque>
#include <vector>

namespace pbsched::policies {

/// Repeated explore-then-commit: Round-Robin over the alive jobs until one
/// of them displays k/(g+1), then that job runs alone to completion.
/// Jobs reaching the trigger at the same time are committed in id order.
class RepeatedEtcPolicy final : public sim::Policy {
public:
    /// Requires 1 ≤ k ≤ g+1 (std::invalid_argument otherwise). With k = g+1
    /// the trigger coincides with completion and the policy is plain RR.
    RepeatedEtcPolicy(std::size_t k, std::size_t g);

    std::string name() const override { return "RepeatedETC"; }
    /// Throws std::invalid_argument if the bars do not have granularity g.
    void start(const Instance& instance, const sim::SimState& state) override;
    std::optional<sim::PolicyTimer> decide(const sim::SimState& state, sim::RateVector& rates) override;
    void on_signal(const sim::SimState& state, JobId job, std::size_t jump) override;

    std::size_t k() const noexcept { return k_; }
    std::size_t g() const noexcept { return g_; }

private:
    std::size_t k_;
    std::size_t g_;
    std::deque<JobId> committed_;
};

/// k = ⌈(g/2)^{2/3}⌉ + 1, the commit level that balances exploration cost
/// against the error of a single noisy jump.
std::size_t tuned_commit_level(std::size_t g);

/// Round-Robin until every alive job displays at least `threshold`, then the
/// remaining jobs run one at a time in descending displayed progress (ties by
/// id). The order is frozen at the switch.
class GenericEtcPolicy final : public sim::Policy {
public:
    /// threshold ∈ (0,1]; std::invalid_argument otherwise.
    explicit GenericEtcPolicy(double threshold);

    /// min(1, g^{-1/3}).
    static double default_threshold(std::size_t g);

    std::string name() const override { return "GenericETC"; }
    std::optional<sim::PolicyTimer> decide(const sim::SimState& state, sim::RateVector& rates) override;

    bool switched() const noexcept { return switched_; }
    double switch_time() const noexcept { return switch_time_; }

private:
    double threshold_;
    bool switched_ = false;
    double switch_time_ = 0.0;
    std::vector<JobId> order_;
    std::size_t cursor_ = 0;
};

} // namespace pbsched::policies
