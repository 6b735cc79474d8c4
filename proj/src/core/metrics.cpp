#include <pbsched/core/metrics.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace pbsched {

std::string_view to_string(EventKind kind) noexcept {
    switch (kind) {
    case EventKind::Signal: return "signal";
    case EventKind::Completion: return "completion";
    case EventKind::Timer: return "timer";
    case EventKind::Merge: return "merge";
    }
    return "unknown";
}

void write_event_log(std::ostream& os, const std::vector<SimEvent>& events) {
    const auto flags = os.flags();
    const auto precision = os.precision();
    os << std::setprecision(12);
    for (const auto& ev : events) {
        os << ev.time << '\t' << to_string(ev.kind) << '\t' << ev.job << '\t' << ev.detail << '\n';
    }
    os.flags(flags);
    os.precision(precision);
}

std::vector<JobId> spt_order(std::span<const double> sizes) {
    std::vector<JobId> order(sizes.size());
    std::iota(order.begin(), order.end(), JobId{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](JobId a, JobId b) { return sizes[a] < sizes[b]; });
    return order;
}

double opt_cost(const Instance& instance) {
    if (instance.empty()) {
        throw std::invalid_argument("empty instance");
    }
    const auto sizes = instance.sizes();
    const auto order = spt_order(sizes);
    const std::size_t n = order.size();
    const auto m = static_cast<std::size_t>(instance.machines());
    // The job at sorted position r delays itself and every later job on its
    // machine: ceil((n − r) / m) completions.
    double cost = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t count = (n - r + m - 1) / m;
        cost += static_cast<double>(count) * sizes[order[r]];
    }
    return cost;
}

double total_cost(const ScheduleOutcome& outcome) {
    return std::accumulate(outcome.completion.begin(), outcome.completion.end(), 0.0);
}

double delay_decomposition_total(const ScheduleOutcome& outcome, const Instance& instance) {
    const std::size_t n = instance.size();
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        total += instance.p(j);
        for (std::size_t i = 0; i < j; ++i) {
            total += outcome.delay(i, j) + outcome.delay(j, i);
        }
    }
    return total;
}

bool check_delay_decomposition(const ScheduleOutcome& outcome, const Instance& instance, double tol) {
    if (outcome.size() != instance.size()) {
        return false;
    }
    const double alg = total_cost(outcome);
    const double rhs = delay_decomposition_total(outcome, instance);
    return std::abs(alg - rhs) <= std::max(tol * alg, kAbsTol);
}

ErrorTerms error_terms(const Instance& instance, double alpha, std::span<const double> betas) {
    const std::size_t n = instance.size();
    if (betas.size() != n) {
        throw std::invalid_argument("error_terms needs one beta per job");
    }
    for (double b : betas) {
        if (!(b >= 0.0 && b <= 1.0)) {
            throw std::invalid_argument("beta outside [0,1]");
        }
    }
    const auto sizes = instance.sizes();
    const auto order = spt_order(sizes);
    ErrorTerms terms;
    for (std::size_t r = 0; r < n; ++r) {
        const JobId i = order[r];
        const double p = sizes[i];
        terms.timing += static_cast<double>(n - 1 - r) * (betas[i] - alpha) * p;
        terms.l1 += std::abs(betas[i] - alpha) * p;
        for (std::size_t s = r + 1; s < n; ++s) {
            const JobId j = order[s];
            if (betas[j] * sizes[j] < betas[i] * p) {
                terms.inversion += sizes[j] - p;
            }
        }
    }
    return terms;
}

std::vector<double> first_thresholds(const Instance& instance) {
    std::vector<double> out;
    out.reserve(instance.size());
    for (const auto& bar : instance.bars()) {
        if (bar.granularity() < 1) {
            throw std::invalid_argument("bar has no intermediate jump");
        }
        out.push_back(bar.threshold(0));
    }
    return out;
}

} // namespace pbsched
