#pragma once

#include <pbsched/bars/bars.hpp>
#include <pbsched/experiments/trial_record.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pbsched::experiments {

enum class Figure { SmoothnessRho, Robustification, Stochastic, ThmChecks };

/// smoothness_rho, robustification, stochastic, thm_checks.
std::string figure_tag(Figure figure);
/// Throws std::invalid_argument on an unknown tag.
Figure figure_from_tag(std::string_view tag);

struct ExperimentConfig {
    Figure figure = Figure::SmoothnessRho;
    std::size_t n = 100;
    std::size_t trials = 20;
    std::uint64_t master_seed = 1;
    /// x-axis: σ for the prediction figures, g for stochastic, α for thm_checks.
    std::vector<double> sweep;
    double pareto_shape = 1.1;

    // smoothness_rho
    double alpha = 0.5;
    std::vector<double> rhos{1e-15, 1e-5, 1e-3, 1e-1};
    bars::PredictionMode beta_mode = bars::PredictionMode::Delayed;

    // robustification: both tuned strategies are robust to within a factor 3
    double lambda = 1.0 / 3.0;
    double delayed_alpha = 5.0 / 9.0;
    double delayed_rho = 0.9;
    std::optional<std::size_t> m_pairs;  ///< default_pair_count(n, 2) when unset

    // stochastic
    bars::StochasticModel model = bars::StochasticModel::Poisson;
    std::optional<double> threshold_fraction;

    // thm_checks
    std::vector<double> check_rhos{0.1, 0.5, 1.0};
    std::vector<int> check_machines{2, 3};
    std::size_t brittle_m_half = 200;
    double brittle_delta = 1e-4;
};

/// Named preset at desk scale (n = 100, 20 trials). Throws
/// std::invalid_argument for an unknown name.
ExperimentConfig preset(std::string_view name);

/// Either {"preset": name, ...overrides} or {"figure": tag, ...}. Unknown
/// keys are rejected with std::invalid_argument.
ExperimentConfig config_from_json(const nlohmann::json& doc);

/// Throws std::invalid_argument if trials = 0, n = 0 or the sweep is empty.
void validate(const ExperimentConfig& config);

/// Runs every (x, trial) cell on up to `jobs` worker threads (0 means the
/// hardware concurrency). Rows come back ordered by x, then trial, then
/// algorithm, whatever the number of workers.
std::vector<TrialRecord> run_figure(const ExperimentConfig& config, unsigned jobs = 0);

} // namespace pbsched::experiments
