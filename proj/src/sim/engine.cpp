#include <pbsched/sim/engine.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace pbsched::sim {

std::vector<JobId> SimState::alive_jobs() const {
    std::vector<JobId> out;
    out.reserve(alive_count);
    for (JobId j = 0; j < alive.size(); ++j) {
        if (alive[j]) {
            out.push_back(j);
        }
    }
    return out;
}

namespace {

int kind_rank(EventKind kind) {
    switch (kind) {
    case EventKind::Completion: return 0;
    case EventKind::Signal: return 1;
    default: return 2;
    }
}

bool earlier(const Horizon& a, const Horizon& b) {
    if (a.time != b.time) {
        return a.time < b.time;
    }
    if (kind_rank(a.kind) != kind_rank(b.kind)) {
        return kind_rank(a.kind) < kind_rank(b.kind);
    }
    return a.job < b.job;
}

/// Next signal position in absolute elapsed units, or +inf when the next jump
/// coincides with completion (those jumps are never reported as signals).
double next_signal_target(const Instance& instance, const SimState& state, JobId j) {
    const auto& bar = instance.bar(j);
    const std::size_t h = state.signals_seen[j];
    if (h >= bar.granularity() || bar.threshold(h) >= 1.0) {
        return std::numeric_limits<double>::infinity();
    }
    return bar.threshold(h) * instance.p(j);
}

void validate_rates(const SimState& state, const RateVector& rates) {
    double total = 0.0;
    for (JobId j = 0; j < rates.size(); ++j) {
        const double r = rates[j];
        if (!(r >= 0.0 && r <= 1.0 + 1e-12)) {
            throw SimulationError("infeasible rates: job " + std::to_string(j) + " has rate " +
                                  std::to_string(r));
        }
        if (r > 0.0 && !state.is_alive(j)) {
            throw SimulationError("infeasible rates: completed job " + std::to_string(j) +
                                  " has a positive rate");
        }
        total += r;
    }
    const double m = state.machines;
    if (total > m * (1.0 + 1e-9)) {
        throw SimulationError("infeasible rates: total rate " + std::to_string(total) +
                              " exceeds " + std::to_string(state.machines) + " machine(s)");
    }
}

/// Shared bookkeeping of both runners: state, completion/delay recording,
/// signal detection and policy notification.
class Simulation {
public:
    Simulation(const Instance& instance, Policy& policy, const RunOptions& options)
        : instance_(instance)
        , policy_(policy)
        , options_(options) {
        if (policy.machines() != instance.machines()) {
            throw SimulationError("policy " + policy.name() + " schedules on " +
                                  std::to_string(policy.machines()) + " machine(s) but the instance has " +
                                  std::to_string(instance.machines()));
        }
        const std::size_t n = instance.size();
        state_.elapsed.assign(n, 0.0);
        state_.alive.assign(n, 1);
        state_.signals_seen.assign(n, 0);
        state_.displayed.assign(n, 0.0);
        state_.alive_count = n;
        state_.machines = instance.machines();
        outcome_.completion.assign(n, 0.0);
        outcome_.delays.assign(n * n, 0.0);
        rates_.assign(n, 0.0);
        policy_.start(instance_, state_);
        settle();
    }

    SimState& state() { return state_; }
    const Instance& instance() const { return instance_; }
    Policy& policy() { return policy_; }
    RateVector& rates() { return rates_; }

    std::optional<PolicyTimer> decide() {
        std::fill(rates_.begin(), rates_.end(), 0.0);
        auto timer = policy_.decide(state_, rates_);
        validate_rates(state_, rates_);
        return timer;
    }

    /// Processes every completion and signal reached at the current time:
    /// completions first, then signals, each in ascending job id.
    std::size_t settle() {
        completed_.clear();
        signalled_.clear();
        const std::size_t n = instance_.size();
        for (JobId j = 0; j < n; ++j) {
            if (!state_.alive[j]) {
                continue;
            }
            const double p = instance_.p(j);
            if (state_.elapsed[j] >= p - reach_tolerance(p)) {
                state_.elapsed[j] = p;
                completed_.push_back(j);
            }
        }
        for (JobId j : completed_) {
            state_.alive[j] = 0;
            --state_.alive_count;
            state_.displayed[j] = 1.0;
            outcome_.completion[j] = state_.now;
            for (JobId i = 0; i < n; ++i) {
                outcome_.delay(i, j) = i == j ? 0.0 : state_.elapsed[i];
            }
        }
        for (JobId j = 0; j < n; ++j) {
            if (!state_.alive[j]) {
                continue;
            }
            for (;;) {
                const double target = next_signal_target(instance_, state_, j);
                if (!std::isfinite(target) || state_.elapsed[j] < target - reach_tolerance(target)) {
                    break;
                }
                ++state_.signals_seen[j];
                signalled_.emplace_back(j, state_.signals_seen[j]);
            }
            state_.displayed[j] = instance_.bar(j).level_after(state_.signals_seen[j]);
        }
        for (JobId j : completed_) {
            log(EventKind::Completion, j, 0);
        }
        for (const auto& [j, jump] : signalled_) {
            log(EventKind::Signal, j, jump);
        }
        for (JobId j : completed_) {
            policy_.on_completion(state_, j);
        }
        for (const auto& [j, jump] : signalled_) {
            policy_.on_signal(state_, j, jump);
        }
        const std::size_t processed = completed_.size() + signalled_.size();
        if (processed > 0 && options_.record_trajectory) {
            outcome_.trajectory.push_back(TrajectoryPoint{state_.now, state_.elapsed});
        }
        return processed;
    }

    bool fire_timer_if_due(const std::optional<PolicyTimer>& timer) {
        if (!timer || timer->at > state_.now + reach_tolerance(state_.now)) {
            return false;
        }
        const bool merge = timer->kind == TimerKind::Merge;
        log(merge ? EventKind::Merge : EventKind::Timer, merge ? timer->tag : 0, merge ? 0 : timer->tag);
        policy_.on_timer(state_, *timer);
        return true;
    }

    ScheduleOutcome finish() { return std::move(outcome_); }

private:
    void log(EventKind kind, JobId job, std::size_t detail) {
        if (options_.log_events) {
            outcome_.events.push_back(SimEvent{state_.now, kind, job, detail});
        }
    }

    const Instance& instance_;
    Policy& policy_;
    RunOptions options_;
    SimState state_;
    ScheduleOutcome outcome_;
    RateVector rates_;
    std::vector<JobId> completed_;
    std::vector<std::pair<JobId, std::size_t>> signalled_;
};

std::size_t zero_step_budget(const Instance& instance) {
    std::size_t jumps = 0;
    for (const auto& bar : instance.bars()) {
        jumps += bar.granularity() + 1;
    }
    return 8 * (jumps + instance.size()) + 1024;
}

} // namespace

std::optional<Horizon> next_event_horizon(const SimState& state, const RateVector& rates,
                                          const Instance& instance,
                                          const std::optional<PolicyTimer>& timer) {
    std::optional<Horizon> best;
    auto consider = [&](const Horizon& h) {
        if (!best || earlier(h, *best)) {
            best = h;
        }
    };
    for (JobId j = 0; j < state.size(); ++j) {
        const double r = rates[j];
        if (!state.is_alive(j) || r <= 0.0) {
            continue;
        }
        const double e = state.elapsed[j];
        const double p = instance.p(j);
        consider(Horizon{state.now + std::max(0.0, p - e) / r, EventKind::Completion, j, 0});
        const double target = next_signal_target(instance, state, j);
        if (std::isfinite(target)) {
            consider(Horizon{state.now + std::max(0.0, target - e) / r, EventKind::Signal, j,
                             state.signals_seen[j] + 1});
        }
    }
    if (timer) {
        const EventKind kind = timer->kind == TimerKind::Merge ? EventKind::Merge : EventKind::Timer;
        consider(Horizon{std::max(state.now, timer->at), kind, timer->tag, timer->tag});
    }
    return best;
}

ScheduleOutcome run(const Instance& instance, Policy& policy, const RunOptions& options) {
    Simulation sim(instance, policy, options);
    SimState& state = sim.state();
    const std::size_t budget = zero_step_budget(instance);
    std::size_t zero_steps = 0;
    while (state.alive_count > 0) {
        const auto timer = sim.decide();
        const auto horizon = next_event_horizon(state, sim.rates(), instance, timer);
        if (!horizon || !std::isfinite(horizon->time)) {
            throw SimulationError("stalled policy: " + policy.name() + " makes no progress at t=" +
                                  std::to_string(state.now));
        }
        const double dt = std::max(0.0, horizon->time - state.now);
        if (dt > 0.0) {
            const RateVector& rates = sim.rates();
            for (JobId j = 0; j < state.size(); ++j) {
                if (rates[j] > 0.0) {
                    state.elapsed[j] += rates[j] * dt;
                }
            }
            state.now = horizon->time;
            zero_steps = 0;
        } else if (++zero_steps > budget) {
            throw SimulationError("stalled policy: " + policy.name() + " keeps requesting zero-length steps");
        }
        sim.settle();
        sim.fire_timer_if_due(timer);
    }
    return sim.finish();
}

ScheduleOutcome run_fixed_step(const Instance& instance, Policy& policy, double dt, const RunOptions& options) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("fixed-step simulation needs dt > 0");
    }
    Simulation sim(instance, policy, options);
    SimState& state = sim.state();
    std::uint64_t step = 0;
    while (state.alive_count > 0) {
        const auto timer = sim.decide();
        const RateVector& rates = sim.rates();
        bool any = false;
        for (JobId j = 0; j < state.size(); ++j) {
            const double r = rates[j];
            if (r > 0.0) {
                any = true;
                state.elapsed[j] = std::min(instance.p(j), state.elapsed[j] + r * dt);
            }
        }
        if (!any && !timer) {
            throw SimulationError("stalled policy: " + policy.name() + " makes no progress at t=" +
                                  std::to_string(state.now));
        }
        ++step;
        state.now = static_cast<double>(step) * dt;
        sim.settle();
        sim.fire_timer_if_due(timer);
    }
    return sim.finish();
}

} // namespace pbsched::sim
