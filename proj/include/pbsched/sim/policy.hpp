#pragma once

#include <pbsched/core/instance.hpp>
#include <pbsched/sim/state.hpp>

#include <optional>
#include <string>

namespace pbsched::sim {

/// A scheduling policy driven by the engine.
///
/// The engine calls decide() after every batch of events. The returned rates
/// stay valid until the next job event (signal, completion) or the returned
/// timer, whichever happens first. Policies are stateful and single-use: one
/// instance per run.
class Policy {
public:
    virtual ~Policy() = default;

    virtual std::string name() const = 0;

    /// Number of machines the policy schedules on.
    virtual int machines() const { return 1; }

    /// Called once before the first event. Non-clairvoyant policies must not
    /// read processing times from `instance`.
    virtual void start(const Instance& instance, const SimState& state) {
        (void)instance;
        (void)state;
    }

    /// Writes the rate of every job into `rates` (pre-sized to n and zeroed).
    virtual std::optional<PolicyTimer> decide(const SimState& state, RateVector& rates) = 0;

    /// `jump` is the 1-based index of the progress-bar jump just observed.
    virtual void on_signal(const SimState& state, JobId job, std::size_t jump) {
        (void)state;
        (void)job;
        (void)jump;
    }
    virtual void on_completion(const SimState& state, JobId job) {
        (void)state;
        (void)job;
    }
    virtual void on_timer(const SimState& state, const PolicyTimer& timer) {
        (void)state;
        (void)timer;
    }
};

} // namespace pbsched::sim
