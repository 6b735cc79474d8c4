#include <pbsched/policies/time_sharing.hpp>

#include <algorithm>
#include <stdexcept>

namespace pbsched::policies {

TimeSharingPolicy::TimeSharingPolicy(double lambda, std::unique_ptr<sim::Policy> inner_a,
                                     std::unique_ptr<sim::Policy> inner_b)
    : lambda_(lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("time sharing: lambda must lie in (0,1)");
    }
    if (!inner_a || !inner_b) {
        throw std::invalid_argument("time sharing: missing inner policy");
    }
    if (inner_a->machines() != 1 || inner_b->machines() != 1) {
        throw std::invalid_argument("time sharing: inner policies must be single-machine");
    }
    lanes_[0].policy = std::move(inner_a);
    lanes_[0].share = lambda;
    lanes_[1].policy = std::move(inner_b);
    lanes_[1].share = 1.0 - lambda;
}

std::string TimeSharingPolicy::name() const {
    return "TimeSharing(" + lanes_[0].policy->name() + "," + lanes_[1].policy->name() + ")";
}

void TimeSharingPolicy::start(const Instance& instance, const sim::SimState& state) {
    last_now_ = state.now;
    for (auto& lane : lanes_) {
        lane.view = state;
        lane.view.now = 0.0;
        lane.view.elapsed.assign(state.size(), 0.0);
        lane.rates.assign(state.size(), 0.0);
        lane.timer.reset();
        lane.policy->start(instance, lane.view);
    }
}

void TimeSharingPolicy::sync(const sim::SimState& state) {
    const double dt = state.now - last_now_;
    last_now_ = state.now;
    for (auto& lane : lanes_) {
        if (dt > 0.0) {
            const double vdt = lane.share * dt;
            lane.view.now += vdt;
            for (JobId j = 0; j < state.size(); ++j) {
                lane.view.elapsed[j] += lane.rates[j] * vdt;
            }
        }
        lane.view.alive = state.alive;
        lane.view.alive_count = state.alive_count;
        lane.view.signals_seen = state.signals_seen;
        lane.view.displayed = state.displayed;
    }
}

void TimeSharingPolicy::fire_due_timers() {
    for (auto& lane : lanes_) {
        if (lane.timer && lane.view.now >= lane.timer->at - reach_tolerance(lane.timer->at)) {
            const sim::PolicyTimer fired = *lane.timer;
            lane.timer.reset();
            lane.policy->on_timer(lane.view, fired);
        }
    }
}

std::optional<sim::PolicyTimer> TimeSharingPolicy::decide(const sim::SimState& state, sim::RateVector& rates) {
    sync(state);
    fire_due_timers();
    std::optional<sim::PolicyTimer> earliest;
    for (std::size_t l = 0; l < 2; ++l) {
        Lane& lane = lanes_[l];
        std::fill(lane.rates.begin(), lane.rates.end(), 0.0);
        lane.timer = lane.policy->decide(lane.view, lane.rates);
        for (JobId j = 0; j < state.size(); ++j) {
            rates[j] += lane.share * lane.rates[j];
        }
        if (lane.timer) {
            const double remaining = std::max(0.0, lane.timer->at - lane.view.now);
            const double at = state.now + remaining / lane.share;
            if (!earliest || at < earliest->at) {
                earliest = sim::PolicyTimer{at, sim::TimerKind::Policy, l};
            }
        }
    }
    return earliest;
}

void TimeSharingPolicy::on_signal(const sim::SimState& state, JobId job, std::size_t jump) {
    sync(state);
    for (auto& lane : lanes_) {
        lane.policy->on_signal(lane.view, job, jump);
    }
}

void TimeSharingPolicy::on_completion(const sim::SimState& state, JobId job) {
    sync(state);
    for (auto& lane : lanes_) {
        lane.policy->on_completion(lane.view, job);
    }
}

void TimeSharingPolicy::on_timer(const sim::SimState& state, const sim::PolicyTimer& timer) {
    sync(state);
    // The lane that asked is due by construction; rounding in the virtual
    // clock must not make it miss its own wake-up.
    Lane& lane = lanes_[timer.tag];
    if (lane.timer && lane.view.now < lane.timer->at) {
        lane.view.now = lane.timer->at;
    }
    fire_due_timers();
}

} // namespace pbsched::policies
