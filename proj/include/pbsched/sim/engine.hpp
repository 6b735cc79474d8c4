#pragma once

#include <pbsched/core/instance.hpp>
#include <pbsched/core/outcome.hpp>
#include <pbsched/sim/policy.hpp>
#include <pbsched/sim/state.hpp>

#include <optional>

namespace pbsched::sim {

struct RunOptions {
    bool log_events = true;
    bool record_trajectory = false;
};

/// Earliest upcoming event given the current rates.
struct Horizon {
    double time;
    EventKind kind;
    JobId job = 0;
    std::size_t detail = 0;
};

/// Earliest time at which a job crosses its next bar jump, a job completes,
/// or `timer` fires. Completions win ties over signals, signals over timers,
/// lower ids first. Returns nullopt if nothing can happen (all rates zero and
/// no timer).
std::optional<Horizon> next_event_horizon(const SimState& state, const RateVector& rates,
                                          const Instance& instance,
                                          const std::optional<PolicyTimer>& timer);

/// Exact event-driven simulation. Between events elapsed times grow linearly,
/// so the engine jumps straight to the next event.
///
/// Throws SimulationError("infeasible rates") if a policy assigns a rate
/// outside [0,1], more than m in total, or a positive rate to a finished job;
/// SimulationError("stalled policy") if all rates are zero with no timer
/// pending.
ScheduleOutcome run(const Instance& instance, Policy& policy, const RunOptions& options = {});

/// Fixed-step discretization of the same model, used as an independent
/// oracle for run(). Completion times are accurate to O(n·dt).
ScheduleOutcome run_fixed_step(const Instance& instance, Policy& policy, double dt,
                               const RunOptions& options = {});

} // namespace pbsched::sim
