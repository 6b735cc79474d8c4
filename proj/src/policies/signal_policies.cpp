#include <pbsched/policies/signal_policies.hpp>

#include <pbsched/policies/baselines.hpp>

#include <stdexcept>
#include <string>

namespace pbsched::policies {

void require_signal_bars(const Instance& instance, std::size_t signal_jump) {
    if (signal_jump == 0) {
        throw std::invalid_argument("signal jump index is 1-based");
    }
    for (const auto& bar : instance.bars()) {
        const bool ok = signal_jump == 1 ? bar.granularity() == 1 : bar.granularity() >= signal_jump;
        if (!ok) {
            throw std::invalid_argument("single-signal policy: bar granularity " +
                                        std::to_string(bar.granularity()) + " cannot provide jump " +
                                        std::to_string(signal_jump));
        }
    }
}

BlindFollowPolicy::BlindFollowPolicy(std::size_t signal_jump)
    : signal_jump_(signal_jump) {}

void BlindFollowPolicy::start(const Instance& instance, const sim::SimState&) {
    require_signal_bars(instance, signal_jump_);
}

void BlindFollowPolicy::on_signal(const sim::SimState&, JobId job, std::size_t jump) {
    if (jump == signal_jump_) {
        queue_.push_back(job);
    }
}

std::optional<sim::PolicyTimer> BlindFollowPolicy::decide(const sim::SimState& state, sim::RateVector& rates) {
    while (!queue_.empty() && !state.alive[queue_.front()]) {
        queue_.pop_front();
    }
    if (!queue_.empty()) {
        rates[queue_.front()] = 1.0;
        return std::nullopt;
    }
    detail::round_robin_rates(state, rates);
    return std::nullopt;
}

RobustSignalPolicy::RobustSignalPolicy(double alpha, double rho, std::size_t signal_jump)
    : signal_jump_(signal_jump) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in (0,1]");
    }
    if (!(rho > 0.0 && rho <= 1.0)) {
        throw std::invalid_argument("rho must lie in (0,1]");
    }
    window_factor_ = 1.0 / (alpha * rho) - 1.0;
}

void RobustSignalPolicy::start(const Instance& instance, const sim::SimState&) {
    require_signal_bars(instance, signal_jump_);
    signal_elapsed_.assign(instance.size(), 0.0);
}

void RobustSignalPolicy::on_signal(const sim::SimState& state, JobId job, std::size_t jump) {
    if (jump == signal_jump_) {
        signal_elapsed_[job] = state.elapsed[job];
        queue_.push_back(job);
    }
}

std::optional<sim::PolicyTimer> RobustSignalPolicy::decide(const sim::SimState& state, sim::RateVector& rates) {
    while (!queue_.empty()) {
        const JobId j = queue_.front();
        if (!state.alive[j]) {
            queue_.pop_front();
            window_open_ = false;
            continue;
        }
        if (!window_open_) {
            // Queued jobs make no progress, so elapsed still equals the value at the signal.
            window_target_ = signal_elapsed_[j] + window_factor_ * signal_elapsed_[j];
            window_open_ = true;
        }
        if (state.elapsed[j] >= window_target_ - reach_tolerance(window_target_)) {
            queue_.pop_front();
            window_open_ = false;
            continue;
        }
        rates[j] = 1.0;
        return sim::PolicyTimer{state.now + (window_target_ - state.elapsed[j]), sim::TimerKind::Policy, j};
    }
    return detail::setf_rates(state, rates);
}

} // namespace pbsched::policies
