#include <pbsched/experiments/figures.hpp>

#include <pbsched/combining/combining.hpp>
#include <pbsched/core/metrics.hpp>
#include <pbsched/experiments/generators.hpp>
#include <pbsched/policies/explore_commit.hpp>
#include <pbsched/policies/policy_config.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace pbsched::experiments {

namespace {

using policies::PolicyConfig;

// Stream purposes for derive_seed.
enum Purpose : std::uint64_t {
    kSizes = 1,
    kPredictions = 2,
    kBars = 3,
    kPairs = 4,
    kBetas = 5,
};

const std::string kRngParam = "rng=" + std::string(bars::kRngAlgorithm);

std::string with_rng(const std::string& params) {
    return params.empty() ? kRngParam : params + ";" + kRngParam;
}

std::string num(double x) {
    return format_number(x);
}

struct Cell {
    const ExperimentConfig& config;
    std::size_t xi;
    double x;
    std::size_t trial;
    std::uint64_t seed;
    std::vector<TrialRecord> rows;

    void add(const std::string& algorithm, const std::string& params, double alg, double opt) {
        TrialRecord r;
        r.figure = figure_tag(config.figure);
        r.algorithm = algorithm;
        r.params = with_rng(params);
        r.x = x;
        r.trial = trial;
        r.seed = seed;
        r.alg_cost = alg;
        r.opt_cost = opt;
        r.ratio = alg / opt;
        rows.push_back(std::move(r));
    }

    void add_with_errors(const std::string& algorithm, const std::string& params, double alg, double opt,
                         const Instance& inst, double alpha) {
        add(algorithm, params, alg, opt);
        const auto betas = first_thresholds(inst);
        const ErrorTerms e = error_terms(inst, alpha, betas);
        rows.back().timing_err = e.timing;
        rows.back().inversion_err = e.inversion;
        rows.back().l1_err = e.l1;
    }

    std::vector<double> sizes() const {
        bars::Rng rng(seed);
        return pareto_sizes(config.n, config.pareto_shape, rng);
    }
};

std::vector<JobId> order_by(const std::vector<double>& keys) {
    return spt_order(keys);
}

std::string mode_name(bars::PredictionMode mode) {
    return mode == bars::PredictionMode::Delayed ? "delayed" : "direct";
}

void smoothness_cell(Cell& cell) {
    const auto& c = cell.config;
    const auto sizes = cell.sizes();
    const auto predictions =
        gaussian_predictions(sizes, cell.x, bars::derive_seed(c.master_seed, cell.trial, kPredictions, cell.xi));
    const Instance inst = bars::prediction_instance(sizes, c.alpha, predictions, c.beta_mode);
    const double opt = opt_cost(inst);
    for (double rho : c.rhos) {
        const PolicyConfig config{policies::Alg1Config{c.alpha, rho}};
        const auto outcome = policies::simulate(inst, config, {false, false});
        cell.add_with_errors("Alg1", policies::describe_params(config) + ";beta_mode=" + mode_name(c.beta_mode),
                             total_cost(outcome), opt, inst, c.alpha);
    }
}

void robustification_cell(Cell& cell) {
    const auto& c = cell.config;
    const auto sizes = cell.sizes();
    const auto predictions =
        gaussian_predictions(sizes, cell.x, bars::derive_seed(c.master_seed, cell.trial, kPredictions, cell.xi));
    const Instance inst =
        bars::prediction_instance(sizes, c.delayed_alpha, predictions, bars::PredictionMode::Delayed);
    const double opt = opt_cost(inst);
    const auto predicted_order = order_by(predictions);
    const PolicyConfig follow{policies::FollowPermutationConfig{predicted_order}};
    const PolicyConfig rr{policies::RrConfig{}};

    const PolicyConfig sharing{policies::TimeSharingConfig{c.lambda, std::make_shared<PolicyConfig>(follow),
                                                           std::make_shared<PolicyConfig>(rr)}};
    cell.add("time_sharing", "lambda=" + num(c.lambda) + ";a=FollowPermutation;b=RR",
             total_cost(policies::simulate(inst, sharing, {false, false})), opt);

    const PolicyConfig delayed{policies::Alg1Config{c.delayed_alpha, c.delayed_rho}};
    cell.add_with_errors("delayed_predictions", policies::describe_params(delayed),
                         total_cost(policies::simulate(inst, delayed, {false, false})), opt, inst,
                         c.delayed_alpha);

    const std::vector<combining::Candidate> candidates{
        {rr, combining::rr_oracle()},
        {follow, combining::permutation_oracle(predicted_order)},
    };
    combining::CombineOptions options;
    options.m_pairs = c.m_pairs.value_or(combining::default_pair_count(c.n, candidates.size()));
    options.seed = bars::derive_seed(c.master_seed, cell.trial, kPairs, cell.xi);
    const auto combined = combining::combine(inst, candidates, options);
    cell.add("combining", "candidates=RR|FollowPermutation;m_pairs=" + std::to_string(options.m_pairs),
             total_cost(combined.outcome), opt);
    cell.rows.back().metadata = combined.metadata().dump();
}

void stochastic_cell(Cell& cell) {
    const auto& c = cell.config;
    const auto g = static_cast<std::size_t>(std::llround(cell.x));
    const std::string model = c.model == bars::StochasticModel::Poisson ? "poisson" : "binomial";
    const Instance inst = bars::stochastic_instance(cell.sizes(), g, c.model, c.master_seed, cell.trial,
                                                    kBars * 1000003ULL + cell.xi);
    const double opt = opt_cost(inst);
    auto run = [&](const std::string& tag, const PolicyConfig& config) {
        const auto params = policies::describe_params(config);
        cell.add(tag, (params.empty() ? "" : params + ";") + "bars=" + model,
                 total_cost(policies::simulate(inst, config, {false, false})), opt);
    };
    run("RepeatedETC", PolicyConfig{policies::RepeatedEtcConfig{1, g}});
    const std::size_t tuned = std::min(policies::tuned_commit_level(g), g + 1);
    run("RepeatedETC", PolicyConfig{policies::RepeatedEtcConfig{tuned, g}});
    run("RR", PolicyConfig{policies::RrConfig{}});
    policies::GenericEtcConfig generic{c.threshold_fraction};
    if (!generic.threshold_fraction) {
        generic.threshold_fraction = policies::GenericEtcPolicy::default_threshold(g);
    }
    run("GenericETC", PolicyConfig{generic});
}

void thm_checks_cell(Cell& cell) {
    const auto& c = cell.config;
    const double alpha = cell.x;
    const auto sizes = cell.sizes();
    const Instance accurate = bars::accurate_instance(sizes, alpha);
    const double opt = opt_cost(accurate);
    auto run = [&](const Instance& inst, const PolicyConfig& config, const std::string& extra, double opt_value) {
        const auto params = policies::describe_params(config);
        const double alg = total_cost(policies::simulate(inst, config, {false, false}));
        const std::string full = params.empty() ? extra : params + ";" + extra;
        if (inst.machines() == 1) {
            cell.add_with_errors(policies::variant_name(config), full, alg, opt_value, inst, alpha);
        } else {
            cell.add(policies::variant_name(config), full, alg, opt_value);
        }
    };

    run(accurate, PolicyConfig{policies::BlindFollowConfig{}}, "bars=accurate", opt);
    for (double rho : c.check_rhos) {
        run(accurate, PolicyConfig{policies::Alg1Config{alpha, rho}}, "bars=accurate", opt);
    }
    for (int m : c.check_machines) {
        const Instance multi = accurate.with_machines(m);
        run(multi, PolicyConfig{policies::MultiMachineConfig{alpha, m}}, "bars=accurate", opt_cost(multi));
    }

    bars::Rng beta_rng(bars::derive_seed(c.master_seed, cell.trial, kBetas, cell.xi));
    std::vector<double> betas(sizes.size());
    for (auto& b : betas) {
        b = beta_rng.uniform();
    }
    const Instance random = bars::signal_instance(sizes, alpha, betas);
    for (double rho : c.check_rhos) {
        run(random, PolicyConfig{policies::Alg1Config{alpha, rho}}, "bars=uniform", opt);
    }
    run(random, PolicyConfig{policies::RrConfig{}}, "bars=uniform", opt);

    if (cell.trial == 0 && alpha > c.brittle_delta && alpha < 1.0) {
        const auto fixture = brittleness_instance(alpha, c.brittle_m_half, c.brittle_delta);
        const double brittle_opt = opt_cost(fixture.instance);
        const std::string extra = "bars=brittleness;m_half=" + std::to_string(c.brittle_m_half) +
                                  ";delta=" + num(c.brittle_delta);
        for (double rho : {1.0, 0.1}) {
            run(fixture.instance, PolicyConfig{policies::Alg1Config{alpha, rho}}, extra, brittle_opt);
        }
    }
}

std::vector<double> default_sweep(Figure figure) {
    switch (figure) {
    case Figure::SmoothnessRho:
    case Figure::Robustification:
        return {0, 1, 2, 5, 10, 25, 50, 100, 150};
    case Figure::Stochastic:
        return {3, 6, 12, 24, 48, 96, 192};
    case Figure::ThmChecks:
        break;
    }
    return {0.25, 0.5, 0.9};
}

template <class T>
T get_as(const nlohmann::json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument("experiment config: field '" + key + "' has the wrong type");
    }
}

} // namespace

std::string figure_tag(Figure figure) {
    switch (figure) {
    case Figure::SmoothnessRho:
        return "smoothness_rho";
    case Figure::Robustification:
        return "robustification";
    case Figure::Stochastic:
        return "stochastic";
    case Figure::ThmChecks:
        break;
    }
    return "thm_checks";
}

Figure figure_from_tag(std::string_view tag) {
    for (Figure f : {Figure::SmoothnessRho, Figure::Robustification, Figure::Stochastic, Figure::ThmChecks}) {
        if (figure_tag(f) == tag) {
            return f;
        }
    }
    throw std::invalid_argument("unknown figure '" + std::string(tag) + "'");
}

ExperimentConfig preset(std::string_view name) {
    ExperimentConfig config;
    config.figure = figure_from_tag(name);
    config.sweep = default_sweep(config.figure);
    return config;
}

ExperimentConfig config_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw std::invalid_argument("experiment config: expected a JSON object");
    }
    ExperimentConfig config;
    if (doc.contains("preset")) {
        config = preset(get_as<std::string>(doc["preset"], "preset"));
    } else if (doc.contains("figure")) {
        config = preset(get_as<std::string>(doc["figure"], "figure"));
    } else {
        throw std::invalid_argument("experiment config: need 'preset' or 'figure'");
    }
    for (const auto& [key, v] : doc.items()) {
        if (key == "preset" || key == "figure") {
            continue;
        } else if (key == "n") {
            config.n = get_as<std::size_t>(v, key);
        } else if (key == "trials") {
            config.trials = get_as<std::size_t>(v, key);
        } else if (key == "seed") {
            config.master_seed = get_as<std::uint64_t>(v, key);
        } else if (key == "sweep") {
            config.sweep = get_as<std::vector<double>>(v, key);
        } else if (key == "pareto_shape") {
            config.pareto_shape = get_as<double>(v, key);
        } else if (key == "alpha") {
            config.alpha = get_as<double>(v, key);
        } else if (key == "rhos") {
            config.rhos = get_as<std::vector<double>>(v, key);
        } else if (key == "beta_mode") {
            const auto mode = get_as<std::string>(v, key);
            if (mode == "delayed") {
                config.beta_mode = bars::PredictionMode::Delayed;
            } else if (mode == "direct") {
                config.beta_mode = bars::PredictionMode::Direct;
            } else {
                throw std::invalid_argument("experiment config: beta_mode must be 'delayed' or 'direct'");
            }
        } else if (key == "lambda") {
            config.lambda = get_as<double>(v, key);
        } else if (key == "delayed_alpha") {
            config.delayed_alpha = get_as<double>(v, key);
        } else if (key == "delayed_rho") {
            config.delayed_rho = get_as<double>(v, key);
        } else if (key == "m_pairs") {
            config.m_pairs = get_as<std::size_t>(v, key);
        } else if (key == "model") {
            const auto model = get_as<std::string>(v, key);
            if (model == "poisson") {
                config.model = bars::StochasticModel::Poisson;
            } else if (model == "binomial") {
                config.model = bars::StochasticModel::Binomial;
            } else {
                throw std::invalid_argument("experiment config: model must be 'poisson' or 'binomial'");
            }
        } else if (key == "threshold_fraction") {
            config.threshold_fraction = get_as<double>(v, key);
        } else if (key == "check_rhos") {
            config.check_rhos = get_as<std::vector<double>>(v, key);
        } else if (key == "check_machines") {
            config.check_machines = get_as<std::vector<int>>(v, key);
        } else if (key == "m_half") {
            config.brittle_m_half = get_as<std::size_t>(v, key);
        } else if (key == "delta") {
            config.brittle_delta = get_as<double>(v, key);
        } else {
            throw std::invalid_argument("experiment config: unknown field '" + key + "'");
        }
    }
    validate(config);
    return config;
}

void validate(const ExperimentConfig& config) {
    if (config.trials == 0) {
        throw std::invalid_argument("experiment config: trials must be at least 1");
    }
    if (config.n == 0) {
        throw std::invalid_argument("experiment config: n must be at least 1");
    }
    if (config.sweep.empty()) {
        throw std::invalid_argument("experiment config: sweep must not be empty");
    }
    if (config.figure == Figure::Robustification && config.n < 2) {
        throw std::invalid_argument("experiment config: combining needs n >= 2");
    }
    if (config.figure == Figure::Stochastic) {
        for (double g : config.sweep) {
            if (!(g >= 1.0) || g != std::round(g)) {
                throw std::invalid_argument("experiment config: stochastic sweep values must be integers >= 1");
            }
        }
    }
}

std::vector<TrialRecord> run_figure(const ExperimentConfig& config, unsigned jobs) {
    validate(config);
    const std::size_t cells = config.sweep.size() * config.trials;
    std::vector<std::vector<TrialRecord>> results(cells);

    auto work = [&](std::size_t index) {
        const std::size_t xi = index / config.trials;
        const std::size_t trial = index % config.trials;
        Cell cell{config, xi, config.sweep[xi], trial, bars::derive_seed(config.master_seed, trial, kSizes), {}};
        switch (config.figure) {
        case Figure::SmoothnessRho:
            smoothness_cell(cell);
            break;
        case Figure::Robustification:
            robustification_cell(cell);
            break;
        case Figure::Stochastic:
            stochastic_cell(cell);
            break;
        case Figure::ThmChecks:
            thm_checks_cell(cell);
            break;
        }
        results[index] = std::move(cell.rows);
    };

    if (jobs == 0) {
        jobs = std::max(1u, std::thread::hardware_concurrency());
    }
    const std::size_t workers = std::min<std::size_t>(jobs, cells);
    if (workers <= 1) {
        for (std::size_t i = 0; i < cells; ++i) {
            work(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < cells; i = next++) {
                    try {
                        work(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                    }
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    std::vector<TrialRecord> records;
    for (auto& rows : results) {
        records.insert(records.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
    }
    return records;
}

} // namespace pbsched::experiments
