#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cga/fitness.hpp"
#include "cga/rng.hpp"

namespace cga::experiments {

enum class ExperimentKind { Variance, Runtime, Drift };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view name);

/// One entry of a K grid: either an explicit value or a formula in n.
/// Recognized formulas: "log n" (natural log), "sqrt n", "n", "n^<a>"
/// and "2^<j>". Ranges "2^a..2^b" expand to one KSpec per power.
struct KSpec {
    std::string label;
    std::optional<double> explicit_value;

    double resolve(int n) const;
};

/// Value of a named K formula at n. Throws ParameterError for unknown names.
double resolve_k(std::string_view formula, int n);

/// Parses a single K grid entry, expanding 2^a..2^b ranges.
std::vector<KSpec> parse_k_specs(std::string_view text);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Runtime;
    FitnessKind fitness = FitnessKind::Cliff;
    std::vector<int> n_values;
    std::vector<KSpec> k_specs;
    int runs = 1;
    std::uint64_t base_seed = kDefaultSeed;
    /// Runtime: evaluations per run. Variance: hard cap on iterations.
    /// Drift: iteration horizon for reaching the snapshot interval.
    std::uint64_t budget = 0;
    std::string output_path;

    // Drift protocol.
    int snapshots = 20;
    std::uint64_t samples = 100000;
    /// Snapshot interval is [2n/3 - V^(1/2 - epsilon), 2n/3].
    double epsilon = 0.0;

    /// Worker threads; 0 means available parallelism.
    unsigned jobs = 0;

    /// Throws ParameterError if any invariant is violated.
    void validate() const;
};

std::uint64_t default_budget(ExperimentKind kind);

/// Key/value pairs from a config text: one `key = value` per line, `#`
/// starts a comment.
using ConfigEntries = std::map<std::string, std::string>;
ConfigEntries parse_config_text(std::string_view text);
ConfigEntries load_config_file(const std::filesystem::path& path);

/// Builds a config from entries. Unknown keys are rejected. The kind may be
/// preset by the caller (e.g. from the CLI verb) and must then agree with
/// any `kind` entry.
ExperimentConfig config_from_entries(const ConfigEntries& entries, std::optional<ExperimentKind> kind = {});

}  // namespace cga::experiments
