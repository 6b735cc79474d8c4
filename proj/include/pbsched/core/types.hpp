#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace pbsched {

/// Index of a job inside an Instance, in [0, n).
using JobId = std::size_t;

/// Relative tolerance used by every identity check on simulated outcomes.
inline constexpr double kRelTol = 1e-9;
/// Absolute floor paired with kRelTol.
inline constexpr double kAbsTol = 1e-12;

/// Slack used when deciding that a continuous quantity reached a target.
/// Scales with the magnitude so long runs with large sizes stay event-exact.
inline double reach_tolerance(double target) noexcept {
    return kAbsTol * std::max(1.0, target);
}

/// Raised when a simulation cannot proceed (infeasible rates, stalled policy,
/// mismatched machine counts).
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pbsched
