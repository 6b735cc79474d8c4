#pragma once

#include <pbsched/core/instance.hpp>
#include <pbsched/core/outcome.hpp>

#include <span>
#include <vector>

namespace pbsched {

/// Job ids sorted by ascending size, ties by id.
std::vector<JobId> spt_order(std::span<const double> sizes);

/// Optimal total completion time. One machine: Σ (n−i+1) p_(i). With m
/// machines the SPT schedule that wraps the sorted jobs over the machines.
/// Throws std::invalid_argument("empty instance").
double opt_cost(const Instance& instance);

double total_cost(const ScheduleOutcome& outcome);

/// |ALG − (Σ p_j + Σ_{i<j} d(i,j) + d(j,i))| ≤ tol · ALG (single machine).
bool check_delay_decomposition(const ScheduleOutcome& outcome, const Instance& instance, double tol);

/// Σ p_j + Σ_{i<j} (d(i,j) + d(j,i)); equals ALG for single-machine work-conserving runs.
double delay_decomposition_total(const ScheduleOutcome& outcome, const Instance& instance);

struct ErrorTerms {
    double timing = 0.0;     ///< Σ (n−i)(β_i − α) p_i over ascending sizes; may be negative
    double inversion = 0.0;  ///< Σ_{i<j} (p_j − p_i) · 1(β_j p_j < β_i p_i)
    double l1 = 0.0;         ///< Σ |β_i − α| p_i
};

/// Throws std::invalid_argument if betas.size() != n or any β ∉ [0,1].
ErrorTerms error_terms(const Instance& instance, double alpha, std::span<const double> betas);

/// First-jump positions β_j^(1) of every bar (granularity ≥ 1 required).
std::vector<double> first_thresholds(const Instance& instance);

} // namespace pbsched
