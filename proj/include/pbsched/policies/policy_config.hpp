#pragma once

#include <pbsched/core/instance.hpp>
#include <pbsched/core/outcome.hpp>
#include <pbsched/sim/engine.hpp>
#include <pbsched/sim/policy.hpp>

#include <json.hpp>

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace pbsched::policies {

struct PolicyConfig;

struct SptConfig {};
struct RrConfig {};
struct SetfConfig {};
struct BlindFollowConfig {
    std::size_t signal_jump = 1;
};
struct Alg1Config {
    double alpha = 0.5;
    double rho = 1.0;
    std::size_t signal_jump = 1;
};
struct TimeSharingConfig {
    double lambda = 0.5;
    std::shared_ptr<const PolicyConfig> inner_a;
    std::shared_ptr<const PolicyConfig> inner_b;
};
struct RepeatedEtcConfig {
    std::size_t k = 1;
    std::size_t g = 1;
};
struct GenericEtcConfig {
    /// Unset: min(1, g^{-1/3}) with g taken from the instance.
    std::optional<double> threshold_fraction;
};
struct MultiMachineConfig {
    double alpha = 0.5;
    int m = 1;
};
struct FollowPermutationConfig {
    std::vector<JobId> order;
};

struct PolicyConfig {
    std::variant<SptConfig, RrConfig, SetfConfig, BlindFollowConfig, Alg1Config, TimeSharingConfig,
                 RepeatedEtcConfig, GenericEtcConfig, MultiMachineConfig, FollowPermutationConfig>
        variant;
};

/// JSON tag of the variant: SPT, RR, SETF, BlindFollow, Alg1, TimeSharing,
/// RepeatedETC, GenericETC, MultiMachinePrefExec, FollowPermutation.
std::string variant_name(const PolicyConfig& config);

/// Flat "key=value;key=value" rendering of the parameters (empty when there
/// are none). Nested time-sharing policies appear as a=<name>[...].
std::string describe_params(const PolicyConfig& config);

/// Throws std::invalid_argument on an unknown tag, a missing/ill-typed field
/// or an out-of-range parameter.
PolicyConfig policy_from_json(const nlohmann::json& doc);
nlohmann::json policy_to_json(const PolicyConfig& config);

/// Checks parameter ranges; throws std::invalid_argument.
void validate(const PolicyConfig& config);

/// Fresh single-use policy object for `instance`.
std::unique_ptr<sim::Policy> make_policy(const PolicyConfig& config, const Instance& instance);

/// The same configuration for the sub-instance made of jobs `kept` (as in
/// Instance::subset): permutations are filtered and re-indexed.
PolicyConfig restrict_to(const PolicyConfig& config, std::span<const JobId> kept);

ScheduleOutcome simulate(const Instance& instance, const PolicyConfig& config,
                         const sim::RunOptions& options = {});

// Convenience entry points, one per policy family.
enum class Baseline { SPT, RR, SETF };
ScheduleOutcome simulate_baseline(const Instance& instance, Baseline variant);
ScheduleOutcome simulate_blind_follow(const Instance& instance);
ScheduleOutcome simulate_alg1(const Instance& instance, double alpha, double rho);
ScheduleOutcome simulate_time_sharing(const Instance& instance, double lambda, const PolicyConfig& inner_a,
                                      const PolicyConfig& inner_b);
ScheduleOutcome simulate_repeated_etc(const Instance& instance, std::size_t k, std::size_t g);
ScheduleOutcome simulate_generic_etc(const Instance& instance, std::optional<double> threshold_fraction);
/// Runs on instance.with_machines(m).
ScheduleOutcome simulate_multimachine(const Instance& instance, double alpha, int m);

} // namespace pbsched::policies
