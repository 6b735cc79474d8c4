#include <pbsched/policies/policy_config.hpp>

#include <pbsched/policies/baselines.hpp>
#include <pbsched/policies/explore_commit.hpp>
#include <pbsched/policies/multi_machine.hpp>
#include <pbsched/policies/signal_policies.hpp>
#include <pbsched/policies/time_sharing.hpp>

#include <cstdio>
#include <stdexcept>
#include <unordered_map>

namespace pbsched::policies {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

const nlohmann::json& field(const nlohmann::json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        throw std::invalid_argument(std::string("policy config: missing field '") + key + "'");
    }
    return *it;
}

double number(const nlohmann::json& doc, const char* key) {
    const auto& v = field(doc, key);
    if (!v.is_number()) {
        throw std::invalid_argument(std::string("policy config: field '") + key + "' must be a number");
    }
    return v.get<double>();
}

std::size_t count(const nlohmann::json& doc, const char* key) {
    const auto& v = field(doc, key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw std::invalid_argument(std::string("policy config: field '") + key +
                                    "' must be a nonnegative integer");
    }
    return v.get<std::size_t>();
}

std::size_t optional_jump(const nlohmann::json& doc) {
    return doc.contains("signal_jump") ? count(doc, "signal_jump") : 1;
}

} // namespace

std::string variant_name(const PolicyConfig& config) {
    return std::visit(Overloaded{
                          [](const SptConfig&) { return std::string("SPT"); },
                          [](const RrConfig&) { return std::string("RR"); },
                          [](const SetfConfig&) { return std::string("SETF"); },
                          [](const BlindFollowConfig&) { return std::string("BlindFollow"); },
                          [](const Alg1Config&) { return std::string("Alg1"); },
                          [](const TimeSharingConfig&) { return std::string("TimeSharing"); },
                          [](const RepeatedEtcConfig&) { return std::string("RepeatedETC"); },
                          [](const GenericEtcConfig&) { return std::string("GenericETC"); },
                          [](const MultiMachineConfig&) { return std::string("MultiMachinePrefExec"); },
                          [](const FollowPermutationConfig&) { return std::string("FollowPermutation"); },
                      },
                      config.variant);
}

std::string describe_params(const PolicyConfig& config) {
    return std::visit(
        Overloaded{
            [](const SptConfig&) { return std::string(); },
            [](const RrConfig&) { return std::string(); },
            [](const SetfConfig&) { return std::string(); },
            [](const BlindFollowConfig& c) {
                return c.signal_jump == 1 ? std::string() : "signal_jump=" + std::to_string(c.signal_jump);
            },
            [](const Alg1Config& c) {
                std::string s = "alpha=" + fmt(c.alpha) + ";rho=" + fmt(c.rho);
                if (c.signal_jump != 1) {
                    s += ";signal_jump=" + std::to_string(c.signal_jump);
                }
                return s;
            },
            [](const TimeSharingConfig& c) {
                auto inner = [](const PolicyConfig& p) {
                    const std::string params = describe_params(p);
                    return variant_name(p) + (params.empty() ? "" : "[" + params + "]");
                };
                return "lambda=" + fmt(c.lambda) + ";a=" + inner(*c.inner_a) + ";b=" + inner(*c.inner_b);
            },
            [](const RepeatedEtcConfig& c) { return "k=" + std::to_string(c.k) + ";g=" + std::to_string(c.g); },
            [](const GenericEtcConfig& c) {
                return c.threshold_fraction ? "threshold=" + fmt(*c.threshold_fraction) : std::string();
            },
            [](const MultiMachineConfig& c) { return "alpha=" + fmt(c.alpha) + ";m=" + std::to_string(c.m); },
            [](const FollowPermutationConfig&) { return std::string(); },
        },
        config.variant);
}

void validate(const PolicyConfig& config) {
    std::visit(Overloaded{
                   [](const SptConfig&) {},
                   [](const RrConfig&) {},
                   [](const SetfConfig&) {},
                   [](const BlindFollowConfig& c) {
                       if (c.signal_jump == 0) {
                           throw std::invalid_argument("signal_jump is 1-based");
                       }
                   },
                   [](const Alg1Config& c) {
                       if (c.signal_jump == 0) {
                           throw std::invalid_argument("signal_jump is 1-based");
                       }
                       RobustSignalPolicy(c.alpha, c.rho, c.signal_jump);
                   },
                   [](const TimeSharingConfig& c) {
                       if (!(c.lambda > 0.0 && c.lambda < 1.0)) {
                           throw std::invalid_argument("time sharing: lambda must lie in (0,1)");
                       }
                       if (!c.inner_a || !c.inner_b) {
                           throw std::invalid_argument("time sharing: missing inner policy");
                       }
                       validate(*c.inner_a);
                       validate(*c.inner_b);
                   },
                   [](const RepeatedEtcConfig& c) { RepeatedEtcPolicy(c.k, c.g); },
                   [](const GenericEtcConfig& c) {
                       if (c.threshold_fraction) {
                           GenericEtcPolicy(*c.threshold_fraction);
                       }
                   },
                   [](const MultiMachineConfig& c) { MultiMachinePolicy(c.alpha, c.m); },
                   [](const FollowPermutationConfig&) {},
               },
               config.variant);
}

PolicyConfig policy_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw std::invalid_argument("policy config: expected a JSON object");
    }
    const auto& tag = field(doc, "variant");
    if (!tag.is_string()) {
        throw std::invalid_argument("policy config: 'variant' must be a string");
    }
    const std::string name = tag.get<std::string>();
    PolicyConfig config;
    if (name == "SPT") {
        config.variant = SptConfig{};
    } else if (name == "RR") {
        config.variant = RrConfig{};
    } else if (name == "SETF") {
        config.variant = SetfConfig{};
    } else if (name == "BlindFollow") {
        config.variant = BlindFollowConfig{optional_jump(doc)};
    } else if (name == "Alg1") {
        config.variant = Alg1Config{number(doc, "alpha"), number(doc, "rho"), optional_jump(doc)};
    } else if (name == "TimeSharing") {
        config.variant = TimeSharingConfig{number(doc, "lambda"),
                                           std::make_shared<PolicyConfig>(policy_from_json(field(doc, "inner_a"))),
                                           std::make_shared<PolicyConfig>(policy_from_json(field(doc, "inner_b")))};
    } else if (name == "RepeatedETC") {
        config.variant = RepeatedEtcConfig{count(doc, "k"), count(doc, "g")};
    } else if (name == "GenericETC") {
        GenericEtcConfig c;
        if (doc.contains("threshold_fraction")) {
            c.threshold_fraction = number(doc, "threshold_fraction");
        }
        config.variant = c;
    } else if (name == "MultiMachinePrefExec") {
        config.variant = MultiMachineConfig{number(doc, "alpha"), static_cast<int>(count(doc, "m"))};
    } else if (name == "FollowPermutation") {
        const auto& order = field(doc, "order");
        if (!order.is_array()) {
            throw std::invalid_argument("policy config: 'order' must be an array");
        }
        FollowPermutationConfig c;
        for (const auto& v : order) {
            if (!v.is_number_integer() || v.get<long long>() < 0) {
                throw std::invalid_argument("policy config: 'order' entries must be job ids");
            }
            c.order.push_back(v.get<JobId>());
        }
        config.variant = std::move(c);
    } else {
        throw std::invalid_argument("policy config: unknown variant '" + name + "'");
    }
    validate(config);
    return config;
}

nlohmann::json policy_to_json(const PolicyConfig& config) {
    nlohmann::json doc;
    doc["variant"] = variant_name(config);
    std::visit(Overloaded{
                   [](const SptConfig&) {},
                   [](const RrConfig&) {},
                   [](const SetfConfig&) {},
                   [&](const BlindFollowConfig& c) {
                       if (c.signal_jump != 1) {
                           doc["signal_jump"] = c.signal_jump;
                       }
                   },
                   [&](const Alg1Config& c) {
                       doc["alpha"] = c.alpha;
                       doc["rho"] = c.rho;
                       if (c.signal_jump != 1) {
                           doc["signal_jump"] = c.signal_jump;
                       }
                   },
                   [&](const TimeSharingConfig& c) {
                       doc["lambda"] = c.lambda;
                       doc["inner_a"] = policy_to_json(*c.inner_a);
                       doc["inner_b"] = policy_to_json(*c.inner_b);
                   },
                   [&](const RepeatedEtcConfig& c) {
                       doc["k"] = c.k;
                       doc["g"] = c.g;
                   },
                   [&](const GenericEtcConfig& c) {
                       if (c.threshold_fraction) {
                           doc["threshold_fraction"] = *c.threshold_fraction;
                       }
                   },
                   [&](const MultiMachineConfig& c) {
                       doc["alpha"] = c.alpha;
                       doc["m"] = c.m;
                   },
                   [&](const FollowPermutationConfig& c) { doc["order"] = c.order; },
               },
               config.variant);
    return doc;
}

std::unique_ptr<sim::Policy> make_policy(const PolicyConfig& config, const Instance& instance) {
    return std::visit(
        Overloaded{
            [](const SptConfig&) -> std::unique_ptr<sim::Policy> { return std::make_unique<SptPolicy>(); },
            [](const RrConfig&) -> std::unique_ptr<sim::Policy> { return std::make_unique<RoundRobinPolicy>(); },
            [](const SetfConfig&) -> std::unique_ptr<sim::Policy> { return std::make_unique<SetfPolicy>(); },
            [](const BlindFollowConfig& c) -> std::unique_ptr<sim::Policy> {
                return std::make_unique<BlindFollowPolicy>(c.signal_jump);
            },
            [](const Alg1Config& c) -> std::unique_ptr<sim::Policy> {
                return std::make_unique<RobustSignalPolicy>(c.alpha, c.rho, c.signal_jump);
            },
            [&](const TimeSharingConfig& c) -> std::unique_ptr<sim::Policy> {
                if (!c.inner_a || !c.inner_b) {
                    throw std::invalid_argument("time sharing: missing inner policy");
                }
                return std::make_unique<TimeSharingPolicy>(c.lambda, make_policy(*c.inner_a, instance),
                                                           make_policy(*c.inner_b, instance));
            },
            [](const RepeatedEtcConfig& c) -> std::unique_ptr<sim::Policy> {
                return std::make_unique<RepeatedEtcPolicy>(c.k, c.g);
            },
            [&](const GenericEtcConfig& c) -> std::unique_ptr<sim::Policy> {
                const double threshold =
                    c.threshold_fraction ? *c.threshold_fraction
                                         : GenericEtcPolicy::default_threshold(instance.levels().size());
                return std::make_unique<GenericEtcPolicy>(threshold);
            },
            [](const MultiMachineConfig& c) -> std::unique_ptr<sim::Policy> {
                return std::make_unique<MultiMachinePolicy>(c.alpha, c.m);
            },
            [](const FollowPermutationConfig& c) -> std::unique_ptr<sim::Policy> {
                return std::make_unique<FollowPermutationPolicy>(c.order);
            },
        },
        config.variant);
}

PolicyConfig restrict_to(const PolicyConfig& config, std::span<const JobId> kept) {
    if (const auto* perm = std::get_if<FollowPermutationConfig>(&config.variant)) {
        std::unordered_map<JobId, JobId> new_id;
        for (JobId k = 0; k < kept.size(); ++k) {
            new_id.emplace(kept[k], k);
        }
        FollowPermutationConfig out;
        for (JobId j : perm->order) {
            auto it = new_id.find(j);
            if (it != new_id.end()) {
                out.order.push_back(it->second);
            }
        }
        return PolicyConfig{std::move(out)};
    }
    if (const auto* ts = std::get_if<TimeSharingConfig>(&config.variant)) {
        return PolicyConfig{TimeSharingConfig{ts->lambda, std::make_shared<PolicyConfig>(restrict_to(*ts->inner_a, kept)),
                                              std::make_shared<PolicyConfig>(restrict_to(*ts->inner_b, kept))}};
    }
    return config;
}

ScheduleOutcome simulate(const Instance& instance, const PolicyConfig& config, const sim::RunOptions& options) {
    auto policy = make_policy(config, instance);
    return sim::run(instance, *policy, options);
}

ScheduleOutcome simulate_baseline(const Instance& instance, Baseline variant) {
    switch (variant) {
    case Baseline::SPT:
        return simulate(instance, PolicyConfig{SptConfig{}});
    case Baseline::RR:
        return simulate(instance, PolicyConfig{RrConfig{}});
    case Baseline::SETF:
        break;
    }
    return simulate(instance, PolicyConfig{SetfConfig{}});
}

ScheduleOutcome simulate_blind_follow(const Instance& instance) {
    return simulate(instance, PolicyConfig{BlindFollowConfig{}});
}

ScheduleOutcome simulate_alg1(const Instance& instance, double alpha, double rho) {
    return simulate(instance, PolicyConfig{Alg1Config{alpha, rho}});
}

ScheduleOutcome simulate_time_sharing(const Instance& instance, double lambda, const PolicyConfig& inner_a,
                                      const PolicyConfig& inner_b) {
    return simulate(instance, PolicyConfig{TimeSharingConfig{lambda, std::make_shared<PolicyConfig>(inner_a),
                                                             std::make_shared<PolicyConfig>(inner_b)}});
}

ScheduleOutcome simulate_repeated_etc(const Instance& instance, std::size_t k, std::size_t g) {
    return simulate(instance, PolicyConfig{RepeatedEtcConfig{k, g}});
}

ScheduleOutcome simulate_generic_etc(const Instance& instance, std::optional<double> threshold_fraction) {
    return simulate(instance, PolicyConfig{GenericEtcConfig{threshold_fraction}});
}

ScheduleOutcome simulate_multimachine(const Instance& instance, double alpha, int m) {
    return simulate(instance.with_machines(m), PolicyConfig{MultiMachineConfig{alpha, m}});
}

} // namespace pbsched::policies
