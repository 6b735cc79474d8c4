#pragma once

#include <pbsched/sim/policy.hpp>

#include <deque>
#include <vector>

namespace pbsched::policies {

/// Validates that every bar can feed a single-signal policy listening to
/// jump `signal_jump` (1-based). With signal_jump == 1 the bars must have
/// granularity exactly 1; a larger index listens to that jump of a finer bar
/// and ignores the others.
void require_signal_bars(const Instance& instance, std::size_t signal_jump);

/// Round-Robin until a job signals; the signalled job then runs alone until
/// completion. Simultaneous signals are served in ascending id order.
class BlindFollowPolicy final : public sim::Policy {
public:
    explicit BlindFollowPolicy(std::size_t signal_jump = 1);

    std::string name() const override { return "BlindFollow"; }
    void start(const Instance& instance, const sim::SimState& state) override;
    std::optional<sim::PolicyTimer> decide(const sim::SimState& state, sim::RateVector& rates) override;
    void on_signal(const sim::SimState& state, JobId job, std::size_t jump) override;

private:
    std::size_t signal_jump_;
    std::deque<JobId> queue_;
};

/// SETF exploration with bounded preferential execution.
///
/// When job j signals with elapsed time e, it runs alone for
/// (1/(αρ) − 1)·e time units. If it is still unfinished afterwards it simply
/// rejoins SETF, which keeps it waiting until the other jobs catch up.
/// ρ → 0 recovers blind following, ρ = 1 the most robust variant.
class RobustSignalPolicy final : public sim::Policy {
public:
    /// alpha, rho ∈ (0,1]; throws std::invalid_argument otherwise.
    RobustSignalPolicy(double alpha, double rho, std::size_t signal_jump = 1);

    std::string name() const override { return "Alg1"; }
    void start(const Instance& instance, const sim::SimState& state) override;
    std::optional<sim::PolicyTimer> decide(const sim::SimState& state, sim::RateVector& rates) override;
    void on_signal(const sim::SimState& state, JobId job, std::size_t jump) override;

    double window_factor() const noexcept { return window_factor_; }

private:
    double window_factor_;
    std::size_t signal_jump_;
    std::deque<JobId> queue_;
    std::vector<double> signal_elapsed_;
    bool window_open_ = false;
    double window_target_ = 0.0;
};

} // namespace pbsched::policies
