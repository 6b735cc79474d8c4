#include <pbsched/policies/multi_machine.hpp>

#include <pbsched/policies/signal_policies.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pbsched::policies {

MultiMachinePolicy::MultiMachinePolicy(double alpha, int m)
    : alpha_(alpha), m_(m) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in (0,1]");
    }
    if (m < 1) {
        throw std::invalid_argument("multi-machine: m must be at least 1");
    }
}

void MultiMachinePolicy::start(const Instance& instance, const sim::SimState&) {
    require_signal_bars(instance, 1);
    queued_.assign(instance.size(), 0);
    target_.assign(instance.size(), 0.0);
}

void MultiMachinePolicy::on_signal(const sim::SimState& state, JobId job, std::size_t jump) {
    if (jump != 1) {
        return;
    }
    queue_.push_back(job);
    queued_[job] = 1;
    target_[job] = state.elapsed[job] / alpha_;
}

std::optional<sim::PolicyTimer> MultiMachinePolicy::decide(const sim::SimState& state, sim::RateVector& rates) {
    // Drop finished jobs and jobs whose budget is used up. Only the first
    // min(m, |Q|) entries receive processing, so only they can run out.
    for (auto it = queue_.begin(); it != queue_.end();) {
        const JobId j = *it;
        const bool spent = state.elapsed[j] >= target_[j] - reach_tolerance(target_[j]);
        if (!state.alive[j] || spent) {
            queued_[j] = 0;
            it = queue_.erase(it);
        } else {
            ++it;
        }
    }
    const std::size_t running = std::min<std::size_t>(static_cast<std::size_t>(m_), queue_.size());
    std::optional<sim::PolicyTimer> timer;
    for (std::size_t s = 0; s < running; ++s) {
        const JobId j = queue_[s];
        rates[j] = 1.0;
        const double at = state.now + (target_[j] - state.elapsed[j]);
        if (!timer || at < timer->at) {
            timer = sim::PolicyTimer{at, sim::TimerKind::Policy, j};
        }
    }
    std::size_t pool = 0;
    for (JobId j = 0; j < state.size(); ++j) {
        if (state.alive[j] && !queued_[j]) {
            ++pool;
        }
    }
    if (pool > 0) {
        const double q = std::min(1.0, static_cast<double>(static_cast<std::size_t>(m_) - running) /
                                           static_cast<double>(pool));
        for (JobId j = 0; j < state.size(); ++j) {
            if (state.alive[j] && !queued_[j]) {
                rates[j] = q;
            }
        }
    }
    return timer;
}

} // namespace pbsched::policies
