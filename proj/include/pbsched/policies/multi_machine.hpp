#pragma once

#include <pbsched/sim/policy.hpp>

#include <deque>
#include <vector>

namespace pbsched::policies {

/// Preferential execution on m identical machines, in the rate formulation.
///
/// Jobs start in the exploration pool E. A signal at elapsed ρ_j moves the
/// job to the back of the FIFO queue Q; the first min(m, |Q|) queued jobs
/// (the set S) run at rate 1, every job in E at q = min(1, (m − |S|)/|E|).
/// A job leaves Q after receiving ρ_j(1−α)/α time units while in S, i.e. once
/// its elapsed reaches ρ_j/α, and if unfinished it goes back to E.
class MultiMachinePolicy final : public sim::Policy {
public:
    /// alpha ∈ (0,1], m ≥ 1; std::invalid_argument otherwise.
    MultiMachinePolicy(double alpha, int m);

    std::string name() const override { return "MultiMachinePrefExec"; }
    int machines() const override { return m_; }
    void start(const Instance& instance, const sim::SimState& state) override;
    std::optional<sim::PolicyTimer> decide(const sim::SimState& state, sim::RateVector& rates) override;
    void on_signal(const sim::SimState& state, JobId job, std::size_t jump) override;

private:
    double alpha_;
    int m_;
    std::deque<JobId> queue_;
    std::vector<char> queued_;
    std::vector<double> target_;
};

} // namespace pbsched::policies
