#include <pbsched/experiments/generators.hpp>

#include <pbsched/bars/bars.hpp>

#include <cmath>
#include <stdexcept>

namespace pbsched::experiments {

std::vector<double> pareto_sizes(std::size_t n, double shape, bars::Rng& rng) {
    if (!(shape > 0.0)) {
        throw std::invalid_argument("Pareto shape must be positive");
    }
    std::vector<double> sizes(n);
    for (auto& p : sizes) {
        p = std::pow(1.0 - rng.uniform(), -1.0 / shape);
    }
    return sizes;
}

Instance gen_pareto_instance(std::size_t n, double shape, std::uint64_t seed) {
    if (n == 0) {
        throw std::invalid_argument("need at least one job");
    }
    bars::Rng rng(seed);
    return Instance::uninformative(pareto_sizes(n, shape, rng));
}

std::vector<double> gaussian_predictions(const std::vector<double>& sizes, double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0)) {
        throw std::invalid_argument("sigma must be nonnegative");
    }
    if (sigma == 0.0) {
        return sizes;
    }
    bars::Rng rng(seed);
    std::vector<double> predictions(sizes.size());
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        predictions[j] = rng.normal(sizes[j], sigma);
    }
    return predictions;
}

BrittlenessFixture brittleness_instance(double alpha, std::size_t m_half, double delta) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0,1)");
    }
    if (!(delta > 0.0 && delta < alpha)) {
        throw std::invalid_argument("delta must lie in (0, alpha)");
    }
    if (m_half == 0) {
        throw std::invalid_argument("m_half must be at least 1");
    }
    std::vector<double> sizes(2 * m_half, 1.0);
    for (std::size_t j = m_half; j < sizes.size(); ++j) {
        sizes[j] = 1.0 / alpha;
    }
    std::vector<double> betas(sizes.size(), alpha - delta);
    Instance instance = bars::signal_instance(std::move(sizes), alpha, betas);
    return {std::move(instance), std::move(betas), alpha};
}

double brittleness_limit_ratio(double alpha) {
    return (4.0 * alpha + 4.0) / (3.0 * alpha + 1.0);
}

} // namespace pbsched::experiments
