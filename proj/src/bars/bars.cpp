#include <pbsched/bars/bars.hpp>

#include <algorithm>
#include <stdexcept>

namespace pbsched::bars {

StepProgressBar signal_bar(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in (0,1]");
    }
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("beta must lie in [0,1]");
    }
    return StepProgressBar({alpha}, {beta, 1.0});
}

StepProgressBar accurate_bar(double alpha) {
    return signal_bar(alpha, alpha);
}

double prediction_threshold(double alpha, double pi, double p, PredictionMode mode) {
    if (!(p > 0.0)) {
        throw std::invalid_argument("processing time must be positive");
    }
    const double raw = mode == PredictionMode::Delayed ? alpha * pi / p : pi / p;
    return std::clamp(raw, 0.0, 1.0);
}

StepProgressBar bar_from_prediction(double alpha, double pi, double p, PredictionMode mode) {
    return signal_bar(alpha, prediction_threshold(alpha, pi, p, mode));
}

std::vector<double> uniform_levels(std::size_t g) {
    std::vector<double> levels(g);
    for (std::size_t h = 0; h < g; ++h) {
        levels[h] = static_cast<double>(h + 1) / static_cast<double>(g + 1);
    }
    return levels;
}

std::vector<double> poisson_points(std::size_t g, Rng& rng) {
    if (g == 0) {
        throw std::invalid_argument("granularity must be positive");
    }
    std::vector<double> points(g);
    double t = 0.0;
    const double rate = static_cast<double>(g);
    for (auto& x : points) {
        t += rng.exponential(rate);
        x = t;
    }
    return points;
}

StepProgressBar poisson_bar(std::size_t g, Rng& rng) {
    std::vector<double> thresholds = poisson_points(g, rng);
    for (auto& x : thresholds) {
        x = std::min(1.0, x);
    }
    thresholds.push_back(1.0);
    return StepProgressBar(uniform_levels(g), std::move(thresholds));
}

StepProgressBar binomial_bar(std::size_t g, Rng& rng) {
    if (g == 0) {
        throw std::invalid_argument("granularity must be positive");
    }
    std::vector<double> thresholds(g);
    for (auto& x : thresholds) {
        x = rng.uniform();
    }
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.push_back(1.0);
    return StepProgressBar(uniform_levels(g), std::move(thresholds));
}

double expected_commit_elapsed(std::size_t k, std::size_t g, double p) {
    if (k == 0 || k > g) {
        throw std::invalid_argument("commit level must lie in [1, g]");
    }
    return static_cast<double>(k) / static_cast<double>(g) * p;
}

StepProgressBar make_bar(const BarSpec& spec, double p) {
    if (const auto* s = std::get_if<AccurateSpec>(&spec)) {
        return accurate_bar(s->alpha);
    }
    if (const auto* s = std::get_if<PredictionSpec>(&spec)) {
        return bar_from_prediction(s->alpha, s->pi, p, s->mode);
    }
    if (const auto* s = std::get_if<ExplicitSpec>(&spec)) {
        return StepProgressBar(s->levels, s->thresholds);
    }
    if (const auto* s = std::get_if<PoissonSpec>(&spec)) {
        Rng rng(s->seed);
        return poisson_bar(s->g, rng);
    }
    const auto& s = std::get<BinomialSpec>(spec);
    Rng rng(s.seed);
    return binomial_bar(s.g, rng);
}

Instance accurate_instance(std::vector<double> sizes, double alpha, int machines) {
    std::vector<StepProgressBar> bars(sizes.size(), accurate_bar(alpha));
    return Instance(std::move(sizes), std::move(bars), machines);
}

Instance signal_instance(std::vector<double> sizes, double alpha, std::span<const double> betas, int machines) {
    if (betas.size() != sizes.size()) {
        throw std::invalid_argument("one beta per job required");
    }
    std::vector<StepProgressBar> bars;
    bars.reserve(sizes.size());
    for (double beta : betas) {
        bars.push_back(signal_bar(alpha, beta));
    }
    return Instance(std::move(sizes), std::move(bars), machines);
}

Instance prediction_instance(std::vector<double> sizes, double alpha, std::span<const double> predictions,
                             PredictionMode mode) {
    if (predictions.size() != sizes.size()) {
        throw std::invalid_argument("one prediction per job required");
    }
    std::vector<StepProgressBar> bars;
    bars.reserve(sizes.size());
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        bars.push_back(bar_from_prediction(alpha, predictions[j], sizes[j], mode));
    }
    return Instance(std::move(sizes), std::move(bars));
}

Instance stochastic_instance(std::vector<double> sizes, std::size_t g, StochasticModel model,
                             std::uint64_t master, std::uint64_t trial, std::uint64_t purpose) {
    std::vector<StepProgressBar> bars;
    bars.reserve(sizes.size());
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        Rng rng(derive_seed(master, trial, purpose, j));
        bars.push_back(model == StochasticModel::Poisson ? poisson_bar(g, rng) : binomial_bar(g, rng));
    }
    return Instance(std::move(sizes), std::move(bars));
}

} // namespace pbsched::bars
