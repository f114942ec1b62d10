#include "cga/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "cga/drift.hpp"
#include "cga/engine.hpp"
#include "cga/errors.hpp"
#include "cga/fitness.hpp"
#include "cga/format.hpp"
#include "cga/poisson_binomial.hpp"
#include "cga/rng.hpp"

namespace cga::experiments {

namespace {

struct GridPoint {
    int n;
    KSpec spec;
    double k;
};

/// (n, K) pairs sorted by n, then K.
std::vector<GridPoint> grid(const ExperimentConfig& cfg) {
    std::vector<GridPoint> points;
    for (int n : cfg.n_values) {
        for (const auto& spec : cfg.k_specs) points.push_back({n, spec, spec.resolve(n)});
    }
    std::stable_sort(points.begin(), points.end(), [](const GridPoint& a, const GridPoint& b) {
        return a.n != b.n ? a.n < b.n : a.k < b.k;
    });
    return points;
}

unsigned worker_count(unsigned requested, std::size_t tasks) {
    unsigned jobs = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(tasks, 1)));
}

/// Progress lines at roughly every 10% of completed tasks.
class Progress {
public:
    Progress(std::ostream* log, std::string label, std::size_t total)
        : log_(log), label_(std::move(label)), total_(total) {}

    void tick() {
        const std::size_t done = ++done_;
        if (log_ == nullptr || total_ == 0) return;
        const std::size_t decile = done * 10 / total_;
        std::lock_guard lock(mutex_);
        if (decile > reported_) {
            reported_ = decile;
            *log_ << label_ << ": " << done << "/" << total_ << " tasks\n" << std::flush;
        }
    }

    void warn(const std::string& msg) {
        if (log_ == nullptr) return;
        std::lock_guard lock(mutex_);
        *log_ << label_ << ": " << msg << "\n" << std::flush;
    }

private:
    std::ostream* log_;
    std::string label_;
    std::size_t total_;
    std::atomic<std::size_t> done_{0};
    std::size_t reported_ = 0;
    std::mutex mutex_;
};

/// Calls fn(i) for i in [0, count) on `jobs` threads. Each index is handled
/// exactly once; the first exception stops the remaining work and is
/// rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
}

std::string fmt(double v) { return format_number(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::string metadata_preamble(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "kind=" << to_string(cfg.kind) << "\n"
       << "fitness=" << to_string(cfg.fitness) << "\n"
       << "base_seed=" << cfg.base_seed << "\n"
       << "log_base=e\n"
       << "runs=" << cfg.runs << "\n"
       << "budget=" << cfg.budget << "\n";
    return os.str();
}

}  // namespace

std::uint64_t variance_horizon(int n, double k) {
    return static_cast<std::uint64_t>(std::ceil(100.0 * std::sqrt(static_cast<double>(n)) * k + 100.0 * k * k));
}

bool in_snapshot_interval(int n, double potential, double variance, double epsilon) {
    const double cliff = 2.0 * n / 3.0;
    const double width = std::pow(variance, 0.5 - epsilon);
    return potential >= cliff - width && potential <= cliff;
}

std::uint64_t task_seed(std::uint64_t base_seed, int n, double k, std::uint64_t run) {
    return derive_seed(base_seed, {static_cast<std::uint64_t>(n), std::bit_cast<std::uint64_t>(k), run});
}

RuntimeReferences runtime_references(int n) {
    const double x = n;
    return {std::pow(1.5, x), std::pow(2.0, x), std::pow(x, x / 3.0)};
}

VarianceResult variance_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
    cfg.validate();
    if (cfg.kind != ExperimentKind::Variance) throw ParameterError("config kind must be variance");
    const auto points = grid(cfg);
    const std::size_t runs = static_cast<std::size_t>(cfg.runs);
    const std::size_t total = points.size() * runs;
    VarianceResult result;
    result.rows.resize(total);
    Progress progress(opts.log, "variance", total);

    parallel_for(total, worker_count(cfg.jobs, total), [&](std::size_t task) {
        const GridPoint& gp = points[task / runs];
        const int run_index = static_cast<int>(task % runs);
        const auto f = UnitationFunction::make(cfg.fitness, gp.n);
        FrequencyModel model(gp.n, gp.k);
        Rng rng = make_stream(task_seed(cfg.base_seed, gp.n, gp.k, static_cast<std::uint64_t>(run_index)));
        const std::uint64_t horizon = variance_horizon(gp.n, gp.k);
        const std::uint64_t executed = std::min(horizon, cfg.budget);
        StepWorkspace ws;
        for (std::uint64_t t = 0; t < executed; ++t) step(model, f, rng, ws, t);
        model.resync();

        VarianceRow& row = result.rows[task];
        row.n = gp.n;
        row.k_label = gp.spec.label;
        row.k_value = gp.k;
        row.run = run_index;
        row.iterations_executed = executed;
        row.variance_final = model.variance();
        row.variance_over_sqrt_k = model.variance() / std::sqrt(gp.k);
        row.potential_final = model.potential();
        if (executed < horizon) {
            progress.warn("n=" + std::to_string(gp.n) + " K=" + gp.spec.label + " run " +
                          std::to_string(run_index) + " censored at " + std::to_string(executed) + " of " +
                          std::to_string(horizon) + " iterations");
        }
        progress.tick();
    });
    for (const auto& row : result.rows) {
        if (row.iterations_executed < variance_horizon(row.n, row.k_value)) ++result.censored_rows;
    }
    return result;
}

RuntimeResult runtime_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
    cfg.validate();
    if (cfg.kind != ExperimentKind::Runtime) throw ParameterError("config kind must be runtime");
    const auto points = grid(cfg);
    const std::size_t runs = static_cast<std::size_t>(cfg.runs);
    const std::size_t total = points.size() * runs;
    RuntimeResult result;
    result.rows.resize(total);
    Progress progress(opts.log, "runtime", total);

    parallel_for(total, worker_count(cfg.jobs, total), [&](std::size_t task) {
        const GridPoint& gp = points[task / runs];
        const int run_index = static_cast<int>(task % runs);
        const auto f = UnitationFunction::make(cfg.fitness, gp.n);
        const std::uint64_t seed = task_seed(cfg.base_seed, gp.n, gp.k, static_cast<std::uint64_t>(run_index));
        FrequencyModel model(gp.n, gp.k);
        Rng rng = make_stream(seed);
        const RunResult r = run(model, f, rng, cfg.budget);

        RuntimeRow& row = result.rows[task];
        row.n = gp.n;
        row.k_exponent = std::log2(gp.k);
        row.k_value = gp.k;
        row.run = run_index;
        row.evaluations = r.evaluations;
        row.censored = r.censored;
        row.seed = seed;
        progress.tick();
    });
    return result;
}

DriftResult drift_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
    cfg.validate();
    if (cfg.kind != ExperimentKind::Drift) throw ParameterError("config kind must be drift");
    const auto points = grid(cfg);
    const std::size_t snapshots = static_cast<std::size_t>(cfg.snapshots);
    const std::size_t total = points.size() * snapshots;
    std::vector<std::optional<DriftRow>> slots(total);
    Progress progress(opts.log, "drift", total);

    parallel_for(total, worker_count(cfg.jobs, total), [&](std::size_t task) {
        const GridPoint& gp = points[task / snapshots];
        const int snapshot_id = static_cast<int>(task % snapshots);
        const auto f = UnitationFunction::cliff(gp.n);
        const int threshold = 2 * gp.n / 3;
        const std::uint64_t seed = task_seed(cfg.base_seed, gp.n, gp.k, static_cast<std::uint64_t>(snapshot_id));
        FrequencyModel model(gp.n, gp.k);
        Rng rng = make_stream(seed);
        StepWorkspace ws;

        bool reached = false;
        for (std::uint64_t t = 0; t <= cfg.budget; ++t) {
            if (in_snapshot_interval(gp.n, model.potential(), model.variance(), cfg.epsilon)) {
                reached = true;
                break;
            }
            if (t == cfg.budget) break;
            step(model, f, rng, ws, t);
        }
        if (!reached) {
            progress.warn("n=" + std::to_string(gp.n) + " K=" + fmt(gp.k) + " snapshot " +
                          std::to_string(snapshot_id) + " not reached within " + std::to_string(cfg.budget) +
                          " iterations");
            progress.tick();
            return;
        }
        model.resync();

        DriftRow row;
        row.n = gp.n;
        row.k_value = gp.k;
        row.snapshot_id = snapshot_id;
        row.potential = model.potential();
        row.variance = model.variance();
        row.p_right_exact = gp.n <= kExactDpLimit ? p_right(pb_distribution(model.frequencies()), threshold)
                                                  : std::nan("");
        row.drift_predicted = predicted_drift(model, threshold).drift_total;
        Rng mc_rng = make_stream(derive_seed(seed, {1}));
        const EmpiricalDrift emp = empirical_drift(model, f, cfg.samples, mc_rng);
        row.drift_empirical = emp.mean;
        row.drift_stderr = emp.stderr_mean;
        row.prob_m_empirical = emp.event_fraction(EventClass::M);
        slots[task] = row;
        progress.tick();
    });

    DriftResult result;
    for (auto& slot : slots) {
        if (slot) {
            result.rows.push_back(*slot);
        } else {
            ++result.snapshots_not_reached;
        }
    }
    return result;
}

std::string csv_header_line(ExperimentKind kind, std::uint64_t base_seed) {
    return "# cga-lab v1, kind=" + std::string(to_string(kind)) + ", base_seed=" + std::to_string(base_seed) +
           ", log_base=e\n";
}

std::string to_csv(const ExperimentConfig& cfg, const VarianceResult& result) {
    std::string out = csv_header_line(ExperimentKind::Variance, cfg.base_seed);
    out += "n,k_label,k_value,run,iterations_executed,variance_final,variance_over_sqrtK,potential_final\n";
    for (const auto& r : result.rows) {
        out += fmt(r.n) + ',' + r.k_label + ',' + fmt(r.k_value) + ',' + fmt(r.run) + ',' +
               fmt(r.iterations_executed) + ',' + fmt(r.variance_final) + ',' + fmt(r.variance_over_sqrt_k) + ',' +
               fmt(r.potential_final) + '\n';
    }
    return out;
}

std::string to_csv(const ExperimentConfig& cfg, const RuntimeResult& result) {
    std::string out = csv_header_line(ExperimentKind::Runtime, cfg.base_seed);
    out += "n,k_exponent,k_value,run,evaluations,censored,seed\n";
    for (const auto& r : result.rows) {
        out += fmt(r.n) + ',' + fmt(r.k_exponent) + ',' + fmt(r.k_value) + ',' + fmt(r.run) + ',' +
               fmt(r.evaluations) + ',' + (r.censored ? "1" : "0") + ',' + fmt(r.seed) + '\n';
    }
    return out;
}

std::string to_csv(const ExperimentConfig& cfg, const DriftResult& result) {
    std::string out = csv_header_line(ExperimentKind::Drift, cfg.base_seed);
    out += "n,k_value,snapshot_id,potential,variance,p_right_exact,drift_empirical,drift_stderr,drift_predicted,"
           "prob_M_empirical\n";
    for (const auto& r : result.rows) {
        out += fmt(r.n) + ',' + fmt(r.k_value) + ',' + fmt(r.snapshot_id) + ',' + fmt(r.potential) + ',' +
               fmt(r.variance) + ',' + fmt(r.p_right_exact) + ',' + fmt(r.drift_empirical) + ',' +
               fmt(r.drift_stderr) + ',' + fmt(r.drift_predicted) + ',' + fmt(r.prob_m_empirical) + '\n';
    }
    return out;
}

std::string metadata(const ExperimentConfig& cfg, const VarianceResult& result) {
    std::string out = metadata_preamble(cfg);
    out += "censored_rows=" + fmt(result.censored_rows) + "\n";
    for (const auto& gp : grid(cfg)) {
        out += "horizon[n=" + fmt(gp.n) + ",k=" + gp.spec.label + "]=" + fmt(variance_horizon(gp.n, gp.k)) + "\n";
    }
    return out;
}

std::string metadata(const ExperimentConfig& cfg, const RuntimeResult& result) {
    std::string out = metadata_preamble(cfg);
    std::uint64_t censored = 0;
    for (const auto& r : result.rows) censored += r.censored ? 1 : 0;
    out += "censored_rows=" + fmt(censored) + "\n";
    std::vector<int> ns = cfg.n_values;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    for (int n : ns) {
        const auto ref = runtime_references(n);
        out += "reference[n=" + fmt(n) + "].three_halves_pow_n=" + fmt(ref.three_halves_pow_n) + "\n";
        out += "reference[n=" + fmt(n) + "].two_pow_n=" + fmt(ref.two_pow_n) + "\n";
        out += "reference[n=" + fmt(n) + "].n_pow_n_third=" + fmt(ref.n_pow_n_third) + "\n";
    }
    return out;
}

std::string metadata(const ExperimentConfig& cfg, const DriftResult& result) {
    std::string out = metadata_preamble(cfg);
    out += "snapshots=" + fmt(cfg.snapshots) + "\n";
    out += "samples=" + fmt(cfg.samples) + "\n";
    out += "epsilon=" + fmt(cfg.epsilon) + "\n";
    out += "snapshots_not_reached=" + fmt(result.snapshots_not_reached) + "\n";
    return out;
}

void run_and_write(const ExperimentConfig& cfg, const RunOptions& opts) {
    cfg.validate();
    std::string csv;
    std::string meta;
    switch (cfg.kind) {
        case ExperimentKind::Variance: {
            const auto r = variance_experiment(cfg, opts);
            csv = to_csv(cfg, r);
            meta = metadata(cfg, r);
            break;
        }
        case ExperimentKind::Runtime: {
            const auto r = runtime_experiment(cfg, opts);
            csv = to_csv(cfg, r);
            meta = metadata(cfg, r);
            break;
        }
        case ExperimentKind::Drift: {
            const auto r = drift_experiment(cfg, opts);
            csv = to_csv(cfg, r);
            meta = metadata(cfg, r);
            break;
        }
    }
    write_file(cfg.output_path, csv);
    write_file(cfg.output_path + ".meta", meta);
}

}  // namespace cga::experiments
