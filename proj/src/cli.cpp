#include "cga/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "cga/drift.hpp"
#include "cga/engine.hpp"
#include "cga/errors.hpp"
#include "cga/experiments.hpp"
#include "cga/fitness.hpp"
#include "cga/format.hpp"
#include "cga/poisson_binomial.hpp"

namespace cga::cli {

namespace {

using experiments::ExperimentKind;

std::uint64_t parse_seed(const std::string& text) {
    if (text == "random") {
        std::random_device rd;
        return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParameterError("invalid seed '" + text + "' (expected an unsigned integer or 'random')");
    }
    return v;
}

/// K given as a real literal or as one of the named formulas in n.
double parse_k(const std::string& text, int n) {
    const auto specs = experiments::parse_k_specs(text);
    if (specs.size() != 1) throw ParameterError("expected a single K value, got '" + text + "'");
    return specs.front().resolve(n);
}

struct RunArgs {
    int n = 0;
    std::string k;
    std::string fitness = "cliff";
    std::string seed = std::to_string(kDefaultSeed);
    std::uint64_t max_evals = 100'000'000ULL;
    std::string trace_path;
    std::uint64_t trace_every = 1;
};

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
    const auto f = UnitationFunction::make(parse_fitness_kind(a.fitness), a.n);
    const double k = parse_k(a.k, a.n);
    const std::uint64_t seed = parse_seed(a.seed);
    if (a.trace_every < 1) throw ParameterError("--trace-every must be at least 1");
    FrequencyModel model(a.n, k);
    Rng rng = make_stream(seed);

    RunResult result;
    if (a.trace_path.empty()) {
        result = run(model, f, rng, a.max_evals);
    } else {
        std::ofstream trace(a.trace_path, std::ios::binary | std::ios::trunc);
        if (!trace) throw IoError("cannot open '" + a.trace_path + "' for writing");
        trace << "# cga-lab v1, kind=trace, seed=" << seed << ", log_base=e\n"
              << "t,potential_before,potential_after,variance_before,variance_after,ones_x,ones_y,event_class,"
                 "delta_potential\n";
        result = run(model, f, rng, a.max_evals, [&](const StepRecord& r) {
            if (r.t % a.trace_every != 0) return;
            trace << r.t << ',' << format_number(r.potential_before) << ',' << format_number(r.potential_after)
                  << ',' << format_number(r.variance_before) << ',' << format_number(r.variance_after) << ','
                  << r.ones_x << ',' << r.ones_y << ',' << to_char(r.event_class) << ','
                  << format_number(r.delta_potential) << '\n';
        });
        trace.flush();
        if (!trace) throw IoError("failed writing '" + a.trace_path + "'");
    }
    result.seed = seed;
    out << "evaluations=" << result.evaluations << " censored=" << (result.censored ? "true" : "false")
        << " iterations=" << result.iterations << " final_potential=" << format_number(result.final_potential)
        << " final_variance=" << format_number(result.final_variance) << " seed=" << seed << '\n';
    (void)err;
    return kExitOk;
}

struct PredictArgs {
    int n = 0;
    std::string k;
    double potential = 0.0;
    double variance = 0.0;
    std::optional<int> threshold;
};

int cmd_predict(const PredictArgs& a, std::ostream& out) {
    if (a.n < 2) throw ParameterError("n must be at least 2");
    if (!(a.variance > 0.0)) throw ParameterError("variance must be positive");
    const int threshold = a.threshold.value_or(2 * a.n / 3);
    const double k = parse_k(a.k, a.n);
    const DriftPrediction d = predicted_drift({a.potential, a.variance, k, static_cast<double>(threshold)});
    out << "threshold=" << threshold << '\n'
        << "p_right=" << format_number(d.p_right) << '\n'
        << "prob_L=" << format_number(d.prob_l) << '\n'
        << "prob_R=" << format_number(d.prob_r) << '\n'
        << "prob_M=" << format_number(d.prob_m) << '\n'
        << "drift_M=" << format_number(d.drift_m) << '\n'
        << "drift_same_slope=" << format_number(d.drift_same_slope) << '\n'
        << "drift_total=" << format_number(d.drift_total) << '\n'
        << "correction_bound=" << format_number(d.correction_bound) << '\n';
    return kExitOk;
}

struct PbArgs {
    std::string freqs_path;
    std::optional<int> n;
    std::optional<double> uniform;
};

std::vector<double> read_frequencies(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    for (char& c : text) {
        if (c == ',' || c == ';') c = ' ';
    }
    std::istringstream tokens(text);
    std::vector<double> freqs;
    std::string tok;
    while (tokens >> tok) {
        if (tok.front() == '#') {
            std::string rest;
            std::getline(tokens, rest);
            continue;
        }
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
            throw ParameterError("invalid frequency '" + tok + "' in '" + path + "'");
        }
        freqs.push_back(v);
    }
    if (freqs.empty()) throw ParameterError("no frequencies in '" + path + "'");
    return freqs;
}

int cmd_pb(const PbArgs& a, std::ostream& out) {
    std::vector<double> freqs;
    if (!a.freqs_path.empty()) {
        if (a.n || a.uniform) throw ParameterError("use either --freqs or --n with --uniform");
        freqs = read_frequencies(a.freqs_path);
    } else {
        if (!a.n || !a.uniform) throw ParameterError("either --freqs or both --n and --uniform are required");
        if (*a.n < 1) throw ParameterError("n must be positive");
        freqs.assign(static_cast<std::size_t>(*a.n), *a.uniform);
    }
    const PBDistribution pb = pb_distribution(freqs);
    for (std::size_t j = 0; j < pb.probs.size(); ++j) {
        out << (j == 0 ? "" : " ") << format_number(pb.probs[j]);
    }
    out << '\n'
        << "mean=" << format_number(pb.mean()) << '\n'
        << "variance=" << format_number(pb.variance()) << '\n'
        << "potential=" << format_number(potential(freqs)) << '\n'
        << "sampling_variance=" << format_number(sampling_variance(freqs)) << '\n';
    return kExitOk;
}

/// Experiment flags; anything set here overrides the config file.
struct ExperimentArgs {
    std::string config_path;
    std::map<std::string, std::string> overrides;
};

int cmd_experiment(ExperimentKind kind, const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
    experiments::ConfigEntries entries;
    if (!a.config_path.empty()) entries = experiments::load_config_file(a.config_path);
    for (const auto& [key, value] : a.overrides) entries[key] = value;
    if (auto it = entries.find("base_seed"); it != entries.end() && it->second == "random") {
        it->second = std::to_string(parse_seed("random"));
    }
    const auto cfg = experiments::config_from_entries(entries, kind);
    experiments::run_and_write(cfg, {&err});
    out << "wrote " << cfg.output_path << '\n';
    return kExitOk;
}

void add_experiment_options(CLI::App* sub, ExperimentArgs& a) {
    sub->add_option("--config", a.config_path, "Key/value config file")->check(CLI::ExistingFile);
    struct Flag {
        const char* name;
        const char* key;
        const char* help;
    };
    static constexpr Flag flags[] = {
        {"--fitness", "fitness", "onemax or cliff"},
        {"--n", "n", "Comma-separated problem sizes"},
        {"--k", "k", "Comma-separated K values or formulas (log n, sqrt n, n^0.45, 2^0..2^19)"},
        {"--runs", "runs", "Runs per (n, K)"},
        {"--seed", "base_seed", "Base seed or 'random'"},
        {"--budget", "budget", "Evaluation budget (runtime) or iteration cap (variance, drift)"},
        {"--output", "output", "Output CSV path"},
        {"--jobs", "jobs", "Worker threads (0 = available parallelism)"},
        {"--snapshots", "snapshots", "Drift snapshots per (n, K)"},
        {"--samples", "samples", "Monte-Carlo steps per drift snapshot"},
        {"--epsilon", "epsilon", "Drift snapshot interval exponent"},
    };
    for (const auto& fl : flags) {
        std::string key = fl.key;
        sub->add_option_function<std::string>(
            fl.name, [&a, key](const std::string& v) { a.overrides[key] = v; }, fl.help);
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"cga-lab: compact genetic algorithm experiments on unitation functions", "cga-lab"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Run the cGA once and print a summary");
    run_cmd->add_option("--n", run_args.n, "Number of bits")->required();
    run_cmd->add_option("--k", run_args.k, "Update strength K (real or formula in n)")->required();
    run_cmd->add_option("--fitness", run_args.fitness, "onemax or cliff")->capture_default_str();
    run_cmd->add_option("--seed", run_args.seed, "Seed or 'random'")->capture_default_str();
    run_cmd->add_option("--max-evals", run_args.max_evals, "Evaluation budget")->capture_default_str();
    run_cmd->add_option("--trace", run_args.trace_path, "Write a per-iteration trace CSV");
    run_cmd->add_option("--trace-every", run_args.trace_every, "Keep every m-th iteration in the trace")
        ->capture_default_str();

    PredictArgs predict_args;
    auto* predict_cmd = app.add_subcommand("predict", "Normal-approximation drift near the cliff");
    predict_cmd->add_option("--n", predict_args.n, "Number of bits")->required();
    predict_cmd->add_option("--k", predict_args.k, "Update strength K")->required();
    predict_cmd->add_option("--potential", predict_args.potential, "Potential P_t")->required();
    predict_cmd->add_option("--variance", predict_args.variance, "Sampling variance V_t")->required();
    predict_cmd->add_option("--threshold", predict_args.threshold, "Cliff position (default floor(2n/3))");

    PbArgs pb_args;
    auto* pb_cmd = app.add_subcommand("pb", "Poisson-binomial distribution of the number of ones");
    pb_cmd->add_option("--freqs", pb_args.freqs_path, "File of frequencies (whitespace or comma separated)");
    pb_cmd->add_option("--n", pb_args.n, "Number of bits for --uniform");
    pb_cmd->add_option("--uniform", pb_args.uniform, "Common frequency of all bits");

    ExperimentArgs variance_args, runtime_args, drift_args;
    auto* variance_cmd = app.add_subcommand("variance-exp", "Sampling variance after 100 sqrt(n) K + 100 K^2 steps");
    add_experiment_options(variance_cmd, variance_args);
    auto* runtime_cmd = app.add_subcommand("runtime-exp", "Evaluations until the optimum on cliff");
    add_experiment_options(runtime_cmd, runtime_args);
    auto* drift_cmd = app.add_subcommand("drift-exp", "Predicted vs Monte-Carlo drift near the cliff");
    add_experiment_options(drift_cmd, drift_args);

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("cga-lab");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*run_cmd) return cmd_run(run_args, out, err);
        if (*predict_cmd) return cmd_predict(predict_args, out);
        if (*pb_cmd) return cmd_pb(pb_args, out);
        if (*variance_cmd) return cmd_experiment(ExperimentKind::Variance, variance_args, out, err);
        if (*runtime_cmd) return cmd_experiment(ExperimentKind::Runtime, runtime_args, out, err);
        if (*drift_cmd) return cmd_experiment(ExperimentKind::Drift, drift_args, out, err);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace cga::cli
