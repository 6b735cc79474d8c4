#pragma once

#include <pbsched/bars/rng.hpp>
#include <pbsched/core/instance.hpp>

#include <cstdint>
#include <vector>

namespace pbsched::experiments {

/// n Pareto draws with scale 1: p = (1−U)^{−1/shape}, support [1, ∞).
std::vector<double> pareto_sizes(std::size_t n, double shape, bars::Rng& rng);

/// Sizes only, with uninformative bars; bars are attached by the caller.
Instance gen_pareto_instance(std::size_t n, double shape, std::uint64_t seed);

/// π_j ~ N(p_j, σ²), σ being the standard deviation. σ = 0 returns the sizes.
std::vector<double> gaussian_predictions(const std::vector<double>& sizes, double sigma, std::uint64_t seed);

struct BrittlenessFixture {
    Instance instance;
    std::vector<double> betas;
    double alpha;
};

/// m_half jobs of size 1 followed by m_half jobs of size 1/α, every bar at
/// level α with its jump at β = α − δ.
/// Requires α ∈ (0,1), δ ∈ (0,α), m_half ≥ 1.
BrittlenessFixture brittleness_instance(double alpha, std::size_t m_half, double delta);

/// (4α+4)/(3α+1), the limit of Alg1(α, ρ=1)'s ratio on the fixture as
/// m_half → ∞ and δ → 0.
double brittleness_limit_ratio(double alpha);

} // namespace pbsched::experiments
