#pragma once

#include <pbsched/bars/rng.hpp>
#include <pbsched/core/instance.hpp>
#include <pbsched/core/progress_bar.hpp>

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace pbsched::bars {

/// Granularity-1 bar that shows α once a β fraction of the job is done.
/// Throws std::invalid_argument unless α ∈ (0,1] and β ∈ [0,1].
StepProgressBar signal_bar(double alpha, double beta);

/// Jump to α exactly at an α fraction (β = α). α = 1 behaves like the
/// uninformative bar.
StepProgressBar accurate_bar(double alpha);

enum class PredictionMode {
    Delayed,  ///< β = clamp(α·π/p): the jump happens after απ units of processing
    Direct,   ///< β = clamp(π/p)
};

/// Signal position induced by a size prediction π (which may be negative).
double prediction_threshold(double alpha, double pi, double p, PredictionMode mode);
StepProgressBar bar_from_prediction(double alpha, double pi, double p, PredictionMode mode);

/// Levels h/(g+1), h = 1..g.
std::vector<double> uniform_levels(std::size_t g);

/// Cumulative sums of g Exp(g) gaps, before clamping at 1.
std::vector<double> poisson_points(std::size_t g, Rng& rng);
/// Bar built from poisson_points clamped at 1, levels h/(g+1).
StepProgressBar poisson_bar(std::size_t g, Rng& rng);
/// g sorted Uniform[0,1] jump positions, levels h/(g+1).
StepProgressBar binomial_bar(std::size_t g, Rng& rng);

/// (k/g)·p, the mean elapsed time at the k-th Poisson jump when no clamp
/// binds. Requires 1 ≤ k ≤ g.
double expected_commit_elapsed(std::size_t k, std::size_t g, double p);

struct AccurateSpec {
    double alpha;
};
struct PredictionSpec {
    double alpha;
    double pi;
    PredictionMode mode = PredictionMode::Delayed;
};
struct ExplicitSpec {
    std::vector<double> levels;
    std::vector<double> thresholds;
};
struct PoissonSpec {
    std::size_t g;
    std::uint64_t seed;
};
struct BinomialSpec {
    std::size_t g;
    std::uint64_t seed;
};
using BarSpec = std::variant<AccurateSpec, PredictionSpec, ExplicitSpec, PoissonSpec, BinomialSpec>;

/// Builds the bar for a job of size p.
StepProgressBar make_bar(const BarSpec& spec, double p);

// Instance builders.

Instance accurate_instance(std::vector<double> sizes, double alpha, int machines = 1);
/// One granularity-1 bar per job at level α with jump positions `betas`.
Instance signal_instance(std::vector<double> sizes, double alpha, std::span<const double> betas,
                         int machines = 1);
Instance prediction_instance(std::vector<double> sizes, double alpha, std::span<const double> predictions,
                             PredictionMode mode);

enum class StochasticModel { Poisson, Binomial };

/// Independent stochastic bars; job j draws from the stream
/// derive_seed(master, trial, purpose, j).
Instance stochastic_instance(std::vector<double> sizes, std::size_t g, StochasticModel model,
                             std::uint64_t master, std::uint64_t trial, std::uint64_t purpose);

} // namespace pbsched::bars
