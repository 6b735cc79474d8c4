#include <pbsched/core/instance.hpp>

#include <cmath>
#include <stdexcept>

namespace pbsched {

Instance::Instance(std::vector<double> sizes, std::vector<StepProgressBar> bars, int machines)
    : bars_(std::move(bars))
    , machines_(machines) {
    if (sizes.size() != bars_.size()) {
        throw std::invalid_argument("instance needs exactly one progress bar per job");
    }
    if (machines_ < 1) {
        throw std::invalid_argument("instance needs at least one machine");
    }
    jobs_.reserve(sizes.size());
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        if (!(sizes[j] > 0.0) || !std::isfinite(sizes[j])) {
            throw std::invalid_argument("processing times must be positive and finite");
        }
        jobs_.push_back(Job{j, sizes[j]});
    }
    for (const auto& bar : bars_) {
        if (bar.levels() != bars_.front().levels()) {
            throw std::invalid_argument("all progress bars of an instance must share their levels");
        }
    }
}

Instance Instance::uninformative(std::vector<double> sizes, int machines) {
    std::vector<StepProgressBar> bars(sizes.size(), StepProgressBar::uninformative());
    return Instance(std::move(sizes), std::move(bars), machines);
}

std::vector<double> Instance::sizes() const {
    std::vector<double> out;
    out.reserve(jobs_.size());
    for (const auto& job : jobs_) {
        out.push_back(job.p);
    }
    return out;
}

const std::vector<double>& Instance::levels() const {
    static const std::vector<double> none;
    return bars_.empty() ? none : bars_.front().levels();
}

Instance Instance::with_machines(int m) const {
    Instance copy = *this;
    if (m < 1) {
        throw std::invalid_argument("instance needs at least one machine");
    }
    copy.machines_ = m;
    return copy;
}

Instance Instance::with_clairvoyance(bool clairvoyant) const {
    Instance copy = *this;
    copy.clairvoyant_ = clairvoyant;
    return copy;
}

Instance Instance::with_bars(std::vector<StepProgressBar> bars) const {
    Instance out(sizes(), std::move(bars), machines_);
    out.clairvoyant_ = clairvoyant_;
    return out;
}

Instance Instance::subset(std::span<const JobId> kept) const {
    std::vector<double> sizes;
    std::vector<StepProgressBar> bars;
    sizes.reserve(kept.size());
    bars.reserve(kept.size());
    for (JobId j : kept) {
        sizes.push_back(p(j));
        bars.push_back(bar(j));
    }
    Instance out(std::move(sizes), std::move(bars), machines_);
    out.clairvoyant_ = clairvoyant_;
    return out;
}

Instance Instance::scaled(double c) const {
    if (!(c > 0.0)) {
        throw std::invalid_argument("scale factor must be positive");
    }
    std::vector<double> s = sizes();
    for (double& p : s) {
        p *= c;
    }
    Instance out(std::move(s), bars_, machines_);
    out.clairvoyant_ = clairvoyant_;
    return out;
}

} // namespace pbsched
