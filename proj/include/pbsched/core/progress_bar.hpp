#pragma once

#include <cstddef>
#include <vector>

namespace pbsched {

/// Step progress bar of granularity g.
///
/// Holds g intermediate displayed levels α^(1) < … < α^(g) and g+1 jump
/// positions β^(1) ≤ … ≤ β^(g+1) = 1 on the actual-progress axis. The
/// displayed value at actual progress x is
///   φ(x) = Σ_{h=1}^{g+1} (α^(h) − α^(h−1)) · 1(x ≥ β^(h)),
/// with α^(0) = 0 and α^(g+1) = 1.
class StepProgressBar {
public:
    /// Validates and stores the bar. Throws std::invalid_argument when
    /// thresholds are unsorted, outside [0,1], do not end in exactly 1, or
    /// when levels are not strictly increasing inside (0,1].
    StepProgressBar(std::vector<double> levels, std::vector<double> thresholds);

    /// φ(x) = 1(x = 1).
    static StepProgressBar uninformative();

    std::size_t granularity() const noexcept { return levels_.size(); }
    const std::vector<double>& levels() const noexcept { return levels_; }
    const std::vector<double>& thresholds() const noexcept { return thresholds_; }

    /// Position β^(h+1) of the jump with zero-based index h (h < g+1).
    double threshold(std::size_t h) const { return thresholds_.at(h); }

    /// Displayed level after `jumps` intermediate jumps (0 → 0, g+1 → 1).
    double level_after(std::size_t jumps) const;

    /// Number of intermediate jumps (h ≤ g) whose position is ≤ x.
    std::size_t jumps_at(double x) const;

    double evaluate(double x) const;

    friend bool operator==(const StepProgressBar&, const StepProgressBar&) = default;

private:
    std::vector<double> levels_;
    std::vector<double> thresholds_;
};

} // namespace pbsched
