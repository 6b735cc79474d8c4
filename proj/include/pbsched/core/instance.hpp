#pragma once

#include <pbsched/core/progress_bar.hpp>
#include <pbsched/core/types.hpp>

#include <span>
#include <vector>

namespace pbsched {

struct Job {
    JobId id;
    double p;   ///< processing time, > 0
};

/// A set of jobs available at time 0, one progress bar per job, and the
/// number of identical machines. Immutable after construction.
class Instance {
public:
    Instance() = default;

    /// Throws std::invalid_argument if sizes are not positive and finite,
    /// the bar count differs from the job count, bars disagree on their level
    /// vector, or machines < 1.
    Instance(std::vector<double> sizes, std::vector<StepProgressBar> bars, int machines = 1);

    /// Every job gets the uninformative bar φ(x) = 1(x = 1).
    static Instance uninformative(std::vector<double> sizes, int machines = 1);

    std::size_t size() const noexcept { return jobs_.size(); }
    bool empty() const noexcept { return jobs_.empty(); }

    const std::vector<Job>& jobs() const noexcept { return jobs_; }
    const std::vector<StepProgressBar>& bars() const noexcept { return bars_; }
    const StepProgressBar& bar(JobId j) const { return bars_.at(j); }
    double p(JobId j) const { return jobs_.at(j).p; }
    std::vector<double> sizes() const;

    int machines() const noexcept { return machines_; }

    /// Whether policies may read processing times (only SPT does).
    bool clairvoyant() const noexcept { return clairvoyant_; }

    /// Level vector shared by all bars (empty for an empty instance).
    const std::vector<double>& levels() const;

    Instance with_machines(int m) const;
    Instance with_clairvoyance(bool clairvoyant) const;
    Instance with_bars(std::vector<StepProgressBar> bars) const;

    /// Jobs `kept` (in the given order), re-indexed from 0.
    Instance subset(std::span<const JobId> kept) const;

    /// Multiplies every processing time by c > 0; bar fractions are unchanged,
    /// so absolute signal positions scale by c as well.
    Instance scaled(double c) const;

private:
    std::vector<Job> jobs_;
    std::vector<StepProgressBar> bars_;
    int machines_ = 1;
    bool clairvoyant_ = true;
};

} // namespace pbsched
