#include <pbsched/core/progress_bar.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbsched {

StepProgressBar::StepProgressBar(std::vector<double> levels, std::vector<double> thresholds)
    : levels_(std::move(levels))
    , thresholds_(std::move(thresholds)) {
    if (thresholds_.size() != levels_.size() + 1) {
        throw std::invalid_argument("progress bar needs exactly one more threshold than levels");
    }
    for (double b : thresholds_) {
        if (!(b >= 0.0 && b <= 1.0)) {
            throw std::invalid_argument("progress bar threshold outside [0,1]");
        }
    }
    if (!std::is_sorted(thresholds_.begin(), thresholds_.end())) {
        throw std::invalid_argument("progress bar thresholds must be nondecreasing");
    }
    if (thresholds_.back() != 1.0) {
        throw std::invalid_argument("last progress bar threshold must be exactly 1");
    }
    double prev = 0.0;
    for (double a : levels_) {
        if (!(a > prev && a <= 1.0)) {
            throw std::invalid_argument("progress bar levels must be strictly increasing in (0,1]");
        }
        prev = a;
    }
}

StepProgressBar StepProgressBar::uninformative() {
    return StepProgressBar({}, {1.0});
}

double StepProgressBar::level_after(std::size_t jumps) const {
    if (jumps == 0) {
        return 0.0;
    }
    if (jumps > levels_.size()) {
        return 1.0;
    }
    return levels_[jumps - 1];
}

std::size_t StepProgressBar::jumps_at(double x) const {
    const auto end = thresholds_.begin() + static_cast<std::ptrdiff_t>(levels_.size());
    return static_cast<std::size_t>(std::upper_bound(thresholds_.begin(), end, x) - thresholds_.begin());
}

double StepProgressBar::evaluate(double x) const {
    double value = 0.0;
    double prev = 0.0;
    for (std::size_t h = 0; h < thresholds_.size(); ++h) {
        const double level = h < levels_.size() ? levels_[h] : 1.0;
        if (x >= thresholds_[h]) {
            value += level - prev;
        }
        prev = level;
    }
    return value;
}

} // namespace pbsched
