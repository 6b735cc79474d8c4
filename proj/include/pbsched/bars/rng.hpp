#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pbsched::bars {

/// Identifier of the generator, recorded alongside every experiment row.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64";

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Stream seed for (master, trial, purpose, job). Each coordinate is mixed
/// in turn, so a trial's draws do not depend on which worker runs it.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial, std::uint64_t purpose,
                          std::uint64_t job = 0) noexcept;

/// Distribution sampling written out by hand so that draws are identical on
/// every standard library, unlike the std:: distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0,1) with 53 random bits.
    double uniform();
    /// −ln(1−U)/rate.
    double exponential(double rate);
    /// Box–Muller.
    double normal(double mean, double stddev);
    /// Uniform integer in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound);

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace pbsched::bars
