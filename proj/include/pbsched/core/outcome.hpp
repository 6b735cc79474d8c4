#pragma once

#include <pbsched/core/types.hpp>

#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace pbsched {

enum class EventKind {
    Signal,      ///< a progress-bar jump was observed; detail = jump index (1-based)
    Completion,  ///< job finished
    Timer,       ///< policy-requested wake-up; detail = policy tag
    Merge,       ///< SETF group caught up with a higher-elapsed job; detail = group size
};

std::string_view to_string(EventKind kind) noexcept;

struct SimEvent {
    double time;
    EventKind kind;
    JobId job;           ///< meaningless for Timer events (set to 0)
    std::size_t detail;

    friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

struct TrajectoryPoint {
    double time;
    std::vector<double> elapsed;
};

/// Result of one complete simulation run.
struct ScheduleOutcome {
    std::vector<double> completion;           ///< C_j
    std::vector<double> delays;               ///< row-major n×n, delays[i*n+j] = e_i(C_j)
    std::vector<SimEvent> events;
    std::vector<TrajectoryPoint> trajectory;  ///< only filled when requested

    std::size_t size() const noexcept { return completion.size(); }
    double delay(JobId i, JobId j) const { return delays[i * completion.size() + j]; }
    double& delay(JobId i, JobId j) { return delays[i * completion.size() + j]; }
};

/// One line per event: "time\tkind\tjob\tdetail", time at 12 significant digits.
void write_event_log(std::ostream& os, const std::vector<SimEvent>& events);

} // namespace pbsched
