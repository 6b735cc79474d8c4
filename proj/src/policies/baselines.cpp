#include <pbsched/policies/baselines.hpp>

#include <pbsched/core/metrics.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pbsched::policies {

namespace detail {

void round_robin_rates(const sim::SimState& state, sim::RateVector& rates) {
    if (state.alive_count == 0) {
        return;
    }
    const double share = 1.0 / static_cast<double>(state.alive_count);
    for (JobId j = 0; j < state.size(); ++j) {
        if (state.alive[j]) {
            rates[j] = share;
        }
    }
}

std::optional<sim::PolicyTimer> setf_rates(const sim::SimState& state, sim::RateVector& rates) {
    double lowest = std::numeric_limits<double>::infinity();
    for (JobId j = 0; j < state.size(); ++j) {
        if (state.alive[j]) {
            lowest = std::min(lowest, state.elapsed[j]);
        }
    }
    if (state.alive_count == 0) {
        return std::nullopt;
    }
    const double cutoff = lowest + reach_tolerance(lowest);
    std::size_t group = 0;
    double next_level = std::numeric_limits<double>::infinity();
    JobId next_job = 0;
    for (JobId j = 0; j < state.size(); ++j) {
        if (!state.alive[j]) {
            continue;
        }
        if (state.elapsed[j] <= cutoff) {
            ++group;
        } else if (state.elapsed[j] < next_level) {
            next_level = state.elapsed[j];
            next_job = j;
        }
    }
    const double share = 1.0 / static_cast<double>(group);
    for (JobId j = 0; j < state.size(); ++j) {
        if (state.alive[j] && state.elapsed[j] <= cutoff) {
            rates[j] = share;
        }
    }
    if (!std::isfinite(next_level)) {
        return std::nullopt;
    }
    return sim::PolicyTimer{state.now + (next_level - lowest) * static_cast<double>(group),
                            sim::TimerKind::Merge, next_job};
}

} // namespace detail

std::optional<sim::PolicyTimer> RoundRobinPolicy::decide(const sim::SimState& state, sim::RateVector& rates) {
    detail::round_robin_rates(state, rates);
    return std::nullopt;
}

std::optional<sim::PolicyTimer> SetfPolicy::decide(const sim::SimState& state, sim::RateVector& rates) {
    return detail::setf_rates(state, rates);
}

FollowPermutationPolicy::FollowPermutationPolicy(std::vector<JobId> order)
    : order_(std::move(order)) {}

void FollowPermutationPolicy::start(const Instance& instance, const sim::SimState&) {
    std::vector<char> seen(instance.size(), 0);
    for (JobId j : order_) {
        if (j >= instance.size() || seen[j]) {
            throw std::invalid_argument("permutation is not a permutation of the instance's jobs");
        }
        seen[j] = 1;
    }
    if (order_.size() != instance.size()) {
        throw std::invalid_argument("permutation is not a permutation of the instance's jobs");
    }
}

std::optional<sim::PolicyTimer> FollowPermutationPolicy::decide(const sim::SimState& state,
                                                                sim::RateVector& rates) {
    while (cursor_ < order_.size() && !state.alive[order_[cursor_]]) {
        ++cursor_;
    }
    if (cursor_ < order_.size()) {
        rates[order_[cursor_]] = 1.0;
    }
    return std::nullopt;
}

void SptPolicy::start(const Instance& instance, const sim::SimState&) {
    if (!instance.clairvoyant()) {
        throw SimulationError("clairvoyance required");
    }
    const auto sizes = instance.sizes();
    order_ = spt_order(sizes);
}

std::optional<sim::PolicyTimer> SptPolicy::decide(const sim::SimState& state, sim::RateVector& rates) {
    while (cursor_ < order_.size() && !state.alive[order_[cursor_]]) {
        ++cursor_;
    }
    if (cursor_ < order_.size()) {
        rates[order_[cursor_]] = 1.0;
    }
    return std::nullopt;
}

} // namespace pbsched::policies
