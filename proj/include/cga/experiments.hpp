#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cga/experiment_config.hpp"

namespace cga::experiments {

struct VarianceRow {
    int n = 0;
    std::string k_label;
    double k_value = 0.0;
    int run = 0;
    std::uint64_t iterations_executed = 0;
    double variance_final = 0.0;
    double variance_over_sqrt_k = 0.0;
    double potential_final = 0.0;
};

struct RuntimeRow {
    int n = 0;
    double k_exponent = 0.0;  // log2(K)
    double k_value = 0.0;
    int run = 0;
    std::uint64_t evaluations = 0;
    bool censored = false;
    std::uint64_t seed = 0;
};

struct DriftRow {
    int n = 0;
    double k_value = 0.0;
    int snapshot_id = 0;
    double potential = 0.0;
    double variance = 0.0;
    double p_right_exact = 0.0;  // NaN when n exceeds kExactDpLimit
    double drift_empirical = 0.0;
    double drift_stderr = 0.0;
    double drift_predicted = 0.0;
    double prob_m_empirical = 0.0;
};

/// Largest n for which drift rows carry the exact Poisson-binomial p_R.
inline constexpr int kExactDpLimit = 2000;

/// Iterations run by the variance protocol: ceil(100 sqrt(n) K + 100 K^2).
std::uint64_t variance_horizon(int n, double k);

/// Whether a snapshot may be taken: potential within
/// [2n/3 - V^(1/2 - epsilon), 2n/3].
bool in_snapshot_interval(int n, double potential, double variance, double epsilon);

/// Seed of the task identified by (n, K, run) under base_seed.
std::uint64_t task_seed(std::uint64_t base_seed, int n, double k, std::uint64_t run);

/// Reference values (3/2)^n, 2^n and n^(n/3) shown alongside runtimes.
struct RuntimeReferences {
    double three_halves_pow_n = 0.0;
    double two_pow_n = 0.0;
    double n_pow_n_third = 0.0;
};
RuntimeReferences runtime_references(int n);

struct RunOptions {
    /// Progress and warnings; nullptr silences them.
    std::ostream* log = nullptr;
};

struct VarianceResult {
    std::vector<VarianceRow> rows;
    /// Rows whose hard cap stopped them before the horizon.
    std::uint64_t censored_rows = 0;
};

struct RuntimeResult {
    std::vector<RuntimeRow> rows;
};

struct DriftResult {
    std::vector<DriftRow> rows;
    /// Snapshots whose potential never entered the interval within budget.
    std::uint64_t snapshots_not_reached = 0;
};

VarianceResult variance_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});
RuntimeResult runtime_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});
DriftResult drift_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

/// CSV serialization: a `# cga-lab v1, ...` comment line, the column header,
/// then one line per row.
std::string csv_header_line(ExperimentKind kind, std::uint64_t base_seed);
std::string to_csv(const ExperimentConfig& cfg, const VarianceResult& result);
std::string to_csv(const ExperimentConfig& cfg, const RuntimeResult& result);
std::string to_csv(const ExperimentConfig& cfg, const DriftResult& result);

/// Companion `key=value` metadata written next to the CSV as <output>.meta.
std::string metadata(const ExperimentConfig& cfg, const VarianceResult& result);
std::string metadata(const ExperimentConfig& cfg, const RuntimeResult& result);
std::string metadata(const ExperimentConfig& cfg, const DriftResult& result);

/// Runs the configured experiment and writes the CSV and metadata files.
/// Throws ParameterError for invalid configs and IoError on write failure.
void run_and_write(const ExperimentConfig& cfg, const RunOptions& opts = {});

}  // namespace cga::experiments
