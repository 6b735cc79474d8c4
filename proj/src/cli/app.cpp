#include <pbsched/cli/app.hpp>

#include <pbsched/core/instance_json.hpp>
#include <pbsched/core/metrics.hpp>
#include <pbsched/experiments/checks.hpp>
#include <pbsched/experiments/figures.hpp>
#include <pbsched/policies/policy_config.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pbsched::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

// Usage errors are reported with exit code 2, everything else with 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

nlohmann::json parse_json(const std::string& text, const std::string& what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("malformed JSON in " + what + ": " + e.what());
    }
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("malformed JSON in " + path + ": " + e.what());
    }
}

Instance read_instance(const std::string& path) {
    try {
        return instance_from_json(read_json_file(path));
    } catch (const std::invalid_argument& e) {
        throw UsageError(path + ": " + e.what());
    }
}

std::string number(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

struct SimulateArgs {
    std::string instance;
    std::string policy;
    bool dump_events = false;
};

int do_simulate(const SimulateArgs& args, std::ostream& out) {
    const Instance inst = read_instance(args.instance);
    policies::PolicyConfig config;
    try {
        config = policies::policy_from_json(parse_json(args.policy, "--policy"));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto outcome = policies::simulate(inst, config, {args.dump_events, false});
    for (JobId j = 0; j < outcome.size(); ++j) {
        out << "C[" << j << "]=" << number(outcome.completion[j]) << '\n';
    }
    const double alg = total_cost(outcome);
    const double opt = opt_cost(inst);
    out << "ALG=" << number(alg) << '\n';
    out << "OPT=" << number(opt) << '\n';
    out << "ratio=" << number(alg / opt) << '\n';
    if (args.dump_events) {
        write_event_log(out, outcome.events);
    }
    return kOk;
}

int do_opt(const std::string& path, std::ostream& out) {
    out << number(opt_cost(read_instance(path))) << '\n';
    return kOk;
}

struct FigureArgs {
    std::string preset;
    std::string config;
    std::string out_dir;
    std::optional<std::size_t> n;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 0;
};

int do_figure(const FigureArgs& args, std::ostream& out, std::ostream& err) {
    experiments::ExperimentConfig config;
    try {
        if (!args.config.empty()) {
            config = experiments::config_from_json(read_json_file(args.config));
        } else if (!args.preset.empty()) {
            config = experiments::preset(args.preset);
        } else {
            throw UsageError("figure: give --preset or --config");
        }
        if (args.n) {
            config.n = *args.n;
        }
        if (args.trials) {
            config.trials = *args.trials;
        }
        if (args.seed) {
            config.master_seed = *args.seed;
        }
        experiments::validate(config);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    std::string out_dir = args.out_dir;
    if (out_dir.empty()) {
        const char* env = std::getenv("PBSCHED_OUT_DIR");
        out_dir = env && *env ? env : "out";
    }
    const auto records = experiments::run_figure(config, args.jobs);
    const std::filesystem::path dir(out_dir);
    const auto tag = experiments::figure_tag(config.figure);
    const auto csv = dir / (tag + ".csv");
    experiments::write_csv(csv, records);
    experiments::write_metadata(dir / (tag + ".metadata.jsonl"), records);
    err << "wrote " << records.size() << " rows to " << csv.string() << '\n';

    out << "algorithm,params,x,trials,mean_ratio,std_ratio\n";
    for (const auto& s : experiments::aggregate(records)) {
        out << s.algorithm << ',' << s.params << ',' << experiments::format_number(s.x) << ',' << s.count << ','
            << experiments::format_number(s.mean) << ',' << experiments::format_number(s.stddev) << '\n';
    }
    return kOk;
}

int do_verify(const std::string& suite, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    std::vector<experiments::CheckResult> results;
    try {
        results = experiments::run_verify_suite(suite, seed);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    bool ok = true;
    for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.property << " (" << r.detail << ")\n";
        if (!r.passed) {
            ok = false;
            err << "violation: " << r.property << " seed=" << r.seed << ": " << r.detail << '\n';
        }
    }
    return ok ? kOk : kFailure;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Non-clairvoyant scheduling simulator with progress-bar feedback", "pbsched"};
    app.require_subcommand(1);

    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "Run one policy on one instance");
    simulate->add_option("--instance", sim_args.instance, "Instance JSON file")->required();
    simulate->add_option("--policy", sim_args.policy, R"(Policy JSON, e.g. '{"variant":"RR"}')")->required();
    simulate->add_flag("--dump-events", sim_args.dump_events, "Print the event log after the summary");

    std::string opt_instance;
    auto* opt = app.add_subcommand("opt", "Print the optimal total completion time");
    opt->add_option("--instance", opt_instance, "Instance JSON file")->required();

    FigureArgs fig_args;
    auto* figure = app.add_subcommand("figure", "Run an experiment and write its CSV");
    figure->add_option("--preset", fig_args.preset, "smoothness_rho, robustification, stochastic or thm_checks");
    figure->add_option("--config", fig_args.config, "Experiment config JSON file");
    figure->add_option("--out", fig_args.out_dir, "Output directory (default $PBSCHED_OUT_DIR or ./out)");
    figure->add_option("--n", fig_args.n, "Jobs per instance");
    figure->add_option("--trials", fig_args.trials, "Trials per sweep point");
    figure->add_option("--seed", fig_args.seed, "Master seed");
    figure->add_option("--jobs", fig_args.jobs, "Worker threads (0 = hardware concurrency)");

    std::string suite = "all";
    std::uint64_t verify_seed = 1;
    auto* verify = app.add_subcommand("verify", "Run an invariant suite");
    verify->add_option("--suite", suite, "decomposition, consistency, robustness, combining, etc or all");
    verify->add_option("--seed", verify_seed, "Seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (simulate->parsed()) {
            return do_simulate(sim_args, out);
        }
        if (opt->parsed()) {
            return do_opt(opt_instance, out);
        }
        if (figure->parsed()) {
            return do_figure(fig_args, out, err);
        }
        return do_verify(suite, verify_seed, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

} // namespace pbsched::cli
