#pragma once

#include <pbsched/core/types.hpp>

#include <cstddef>
#include <vector>

namespace pbsched::sim {

/// Snapshot of a run as seen by a policy.
struct SimState {
    double now = 0.0;
    std::vector<double> elapsed;            ///< e_j(now)
    std::vector<char> alive;                ///< 1 while uncompleted
    std::vector<std::size_t> signals_seen;  ///< progress-bar jumps observed so far
    std::vector<double> displayed;          ///< X_j = φ_j(e_j / p_j)
    std::size_t alive_count = 0;
    int machines = 1;

    std::size_t size() const noexcept { return elapsed.size(); }
    bool is_alive(JobId j) const noexcept { return alive[j] != 0; }
    std::vector<JobId> alive_jobs() const;
};

/// Processing rate per job; entries of completed jobs must be 0.
using RateVector = std::vector<double>;

enum class TimerKind { Policy, Merge };

/// Absolute time at which a policy wants to be consulted again even if no
/// job event happens first.
struct PolicyTimer {
    double at;
    TimerKind kind = TimerKind::Policy;
    std::size_t tag = 0;
};

} // namespace pbsched::sim
