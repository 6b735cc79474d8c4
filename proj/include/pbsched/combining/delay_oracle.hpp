#pragma once

#include <pbsched/core/instance.hpp>

#include <functional>
#include <string>
#include <vector>

namespace pbsched::combining {

/// d(i,j) for two-job RR: min(p_i, p_j).
double delay_rr(double p_i, double p_j) noexcept;

/// d(i,j) for blind following of single signals at β·p. The job whose
/// signal comes first (lower id on a tie) finishes first.
double delay_blind(JobId i, double p_i, double beta_i, JobId j, double p_j, double beta_j) noexcept;

/// d(i,j) = p_i · 1(σ(i) < σ(j)) for a sequential schedule in order σ.
double delay_permutation(double p_i, std::size_t position_i, std::size_t position_j) noexcept;

/// A delay that can be evaluated once both jobs are finished, i.e. from
/// their sizes and bars plus fixed side information.
struct DelayOracle {
    std::string name;
    /// False when the function only bounds the delay from above.
    bool exact = true;
    std::function<double(const Instance&, JobId, JobId)> fn;

    double operator()(const Instance& instance, JobId i, JobId j) const { return fn(instance, i, j); }
};

DelayOracle rr_oracle();
/// Reads β from the first jump of each bar.
DelayOracle blind_oracle();
/// `order` lists job ids in schedule order.
DelayOracle permutation_oracle(std::vector<JobId> order);

} // namespace pbsched::combining
