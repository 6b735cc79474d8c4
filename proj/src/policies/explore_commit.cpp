#include <pbsched/policies/explore_commit.hpp>

#include <pbsched/policies/baselines.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pbsched::policies {

RepeatedEtcPolicy::RepeatedEtcPolicy(std::size_t k, std::size_t g)
    : k_(k), g_(g) {
    if (g == 0) {
        throw std::invalid_argument("repeated ETC: g must be positive");
    }
    if (k == 0 || k > g + 1) {
        throw std::invalid_argument("repeated ETC: k must lie in [1, g+1], got k=" + std::to_string(k) +
                                    " g=" + std::to_string(g));
    }
}

void RepeatedEtcPolicy::start(const Instance& instance, const sim::SimState&) {
    for (const auto& bar : instance.bars()) {
        if (bar.granularity() != g_) {
            throw std::invalid_argument("repeated ETC: bar granularity " + std::to_string(bar.granularity()) +
                                        " does not match g=" + std::to_string(g_));
        }
    }
}

void RepeatedEtcPolicy::on_signal(const sim::SimState&, JobId job, std::size_t jump) {
    if (jump == k_) {
        committed_.push_back(job);
    }
}

std::optional<sim::PolicyTimer> RepeatedEtcPolicy::decide(const sim::SimState& state, sim::RateVector& rates) {
    while (!committed_.empty() && !state.alive[committed_.front()]) {
        committed_.pop_front();
    }
    if (!committed_.empty()) {
        rates[committed_.front()] = 1.0;
        return std::nullopt;
    }
    detail::round_robin_rates(state, rates);
    return std::nullopt;
}

std::size_t tuned_commit_level(std::size_t g) {
    const double half = static_cast<double>(g) / 2.0;
    // cbrt(x^2) is exact for perfect cubes where pow(x, 2/3) can overshoot.
    return static_cast<std::size_t>(std::ceil(std::cbrt(half * half) - 1e-12)) + 1;
}

GenericEtcPolicy::GenericEtcPolicy(double threshold)
    : threshold_(threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw std::invalid_argument("generic ETC: threshold must lie in (0,1]");
    }
}

double GenericEtcPolicy::default_threshold(std::size_t g) {
    if (g == 0) {
        return 1.0;
    }
    return std::min(1.0, std::cbrt(1.0 / static_cast<double>(g)));
}

std::optional<sim::PolicyTimer> GenericEtcPolicy::decide(const sim::SimState& state, sim::RateVector& rates) {
    if (!switched_) {
        bool ready = true;
        for (JobId j = 0; j < state.size() && ready; ++j) {
            if (state.alive[j] && state.displayed[j] < threshold_ - 1e-12) {
                ready = false;
            }
        }
        if (!ready) {
            detail::round_robin_rates(state, rates);
            return std::nullopt;
        }
        switched_ = true;
        switch_time_ = state.now;
        order_ = state.alive_jobs();
        std::stable_sort(order_.begin(), order_.end(),
                         [&](JobId a, JobId b) { return state.displayed[a] > state.displayed[b]; });
    }
    while (cursor_ < order_.size() && !state.alive[order_[cursor_]]) {
        ++cursor_;
    }
    if (cursor_ < order_.size()) {
        rates[order_[cursor_]] = 1.0;
    }
    return std::nullopt;
}

} // namespace pbsched::policies
