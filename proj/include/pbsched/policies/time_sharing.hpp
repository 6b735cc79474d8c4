#pragma once

#include <pbsched/sim/policy.hpp>

#include <memory>
#include <optional>

namespace pbsched::policies {

/// Runs two single-machine policies side by side: A with a λ share of the
/// machine, B with the rest.
///
/// Each sub-policy sees a virtual clock that advances at its own share and
/// the elapsed times its own sub-schedule has delivered. Signals and
/// completions are physical: a bar jumps once, when the combined elapsed
/// time crosses its threshold, and both sub-policies hear about it.
class TimeSharingPolicy final : public sim::Policy {
public:
    /// Throws std::invalid_argument unless 0 < lambda < 1 and both inner
    /// policies are non-null single-machine policies.
    TimeSharingPolicy(double lambda, std::unique_ptr<sim::Policy> inner_a, std::unique_ptr<sim::Policy> inner_b);

    std::string name() const override;
    void start(const Instance& instance, const sim::SimState& state) override;
    std::optional<sim::PolicyTimer> decide(const sim::SimState& state, sim::RateVector& rates) override;
    void on_signal(const sim::SimState& state, JobId job, std::size_t jump) override;
    void on_completion(const sim::SimState& state, JobId job) override;
    void on_timer(const sim::SimState& state, const sim::PolicyTimer& timer) override;

private:
    struct Lane {
        std::unique_ptr<sim::Policy> policy;
        double share = 0.0;
        sim::SimState view;
        sim::RateVector rates;
        std::optional<sim::PolicyTimer> timer;  // in virtual time
    };

    void sync(const sim::SimState& state);
    void fire_due_timers();

    double lambda_;
    Lane lanes_[2];
    double last_now_ = 0.0;
};

} // namespace pbsched::policies
