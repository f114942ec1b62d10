#include "cga/experiment_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cga/errors.hpp"

namespace cga::experiments {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

template <class Int>
Int parse_int(std::string_view key, std::string_view s) {
    s = trim(s);
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        // Accept integral reals such as 1e8 for budgets.
        if (auto d = parse_double(s); d && *d >= 0 && std::floor(*d) == *d && *d < 1.8e19) {
            return static_cast<Int>(*d);
        }
        throw ParameterError("invalid integer for '" + std::string(key) + "': '" + std::string(s) + "'");
    }
    return v;
}

std::string normalize(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c != ' ' && c != '\t') out.push_back(c);
    }
    return out;
}

/// Exponent j of a "2^j" token, if the token has that shape.
std::optional<int> power_of_two_exponent(std::string_view token) {
    if (token.size() < 3 || token.substr(0, 2) != "2^") return std::nullopt;
    const auto rest = token.substr(2);
    int j = 0;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), j);
    if (ec != std::errc{} || ptr != rest.data() + rest.size()) return std::nullopt;
    return j;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Variance: return "variance";
        case ExperimentKind::Runtime: return "runtime";
        case ExperimentKind::Drift: return "drift";
    }
    return "?";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
    if (name == "variance") return ExperimentKind::Variance;
    if (name == "runtime") return ExperimentKind::Runtime;
    if (name == "drift") return ExperimentKind::Drift;
    throw ParameterError("unknown experiment kind '" + std::string(name) + "'");
}

double resolve_k(std::string_view formula, int n) {
    const std::string f = normalize(formula);
    if (n < 1) throw ParameterError("n must be positive");
    const double x = n;
    if (f == "logn" || f == "ln(n)" || f == "log(n)") return std::log(x);
    if (f == "sqrtn" || f == "sqrt(n)") return std::sqrt(x);
    if (f == "n") return x;
    if (f.size() > 2 && f.substr(0, 2) == "n^") {
        if (auto a = parse_double(std::string_view(f).substr(2))) return std::pow(x, *a);
    }
    if (auto j = power_of_two_exponent(f)) return std::ldexp(1.0, *j);
    throw ParameterError("unknown K formula '" + std::string(formula) + "'");
}

double KSpec::resolve(int n) const {
    const double k = explicit_value ? *explicit_value : resolve_k(label, n);
    if (!(k > 0.0) || !std::isfinite(k)) throw ParameterError("K '" + label + "' resolves to a non-positive value");
    return k;
}

std::vector<KSpec> parse_k_specs(std::string_view text) {
    std::vector<KSpec> out;
    for (auto item : split(text, ',')) {
        if (item.empty()) continue;
        const std::string token = normalize(item);
        if (const auto dots = token.find(".."); dots != std::string::npos) {
            const auto lo = power_of_two_exponent(std::string_view(token).substr(0, dots));
            const auto hi = power_of_two_exponent(std::string_view(token).substr(dots + 2));
            if (!lo || !hi || *lo > *hi) throw ParameterError("invalid K range '" + token + "' (expected 2^a..2^b)");
            for (int j = *lo; j <= *hi; ++j) out.push_back({"2^" + std::to_string(j), std::ldexp(1.0, j)});
            continue;
        }
        if (auto v = parse_double(token)) {
            out.push_back({token, *v});
            continue;
        }
        resolve_k(token, 16);  // rejects unknown formulas early
        if (auto j = power_of_two_exponent(token)) {
            out.push_back({token, std::ldexp(1.0, *j)});
        } else {
            out.push_back({std::string(trim(item)), std::nullopt});
        }
    }
    return out;
}

std::uint64_t default_budget(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Runtime: return 100'000'000ULL;
        case ExperimentKind::Variance: return 1'000'000'000ULL;
        case ExperimentKind::Drift: return 10'000'000ULL;
    }
    return 0;
}

void ExperimentConfig::validate() const {
    if (runs < 1) throw ParameterError("runs must be at least 1");
    if (n_values.empty()) throw ParameterError("at least one n is required");
    if (k_specs.empty()) throw ParameterError("at least one K is required");
    if (output_path.empty()) throw ParameterError("an output path is required");
    for (int n : n_values) {
        if (n < 2) throw ParameterError("n must be at least 2");
        if (fitness == FitnessKind::Cliff && n % 3 != 0) {
            throw ParameterError("n must be divisible by 3 for cliff (got " + std::to_string(n) + ")");
        }
        for (const auto& k : k_specs) k.resolve(n);
    }
    if (kind != ExperimentKind::Variance && fitness != FitnessKind::Cliff) {
        throw ParameterError(std::string(to_string(kind)) + " experiments require fitness = cliff");
    }
    if (kind == ExperimentKind::Runtime && budget < 2) throw ParameterError("budget must be at least 2 evaluations");
    if (kind != ExperimentKind::Runtime && budget < 1) throw ParameterError("budget must be at least 1 iteration");
    if (kind == ExperimentKind::Drift) {
        if (snapshots < 1) throw ParameterError("snapshots must be at least 1");
        if (samples < 1) throw ParameterError("samples must be at least 1");
        if (!(epsilon >= 0.0 && epsilon < 0.5)) throw ParameterError("epsilon must lie in [0, 1/2)");
    }
}

ConfigEntries parse_config_text(std::string_view text) {
    ConfigEntries entries;
    int line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        auto line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParameterError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParameterError("config line " + std::to_string(line_no) + ": empty key");
        entries[std::string(key)] = std::string(value);
    }
    return entries;
}

ConfigEntries load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot read config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

ExperimentConfig config_from_entries(const ConfigEntries& entries, std::optional<ExperimentKind> kind) {
    ExperimentConfig cfg;
    if (auto it = entries.find("kind"); it != entries.end()) {
        const auto parsed = parse_experiment_kind(it->second);
        if (kind && *kind != parsed) throw ParameterError("config kind does not match the requested experiment");
        kind = parsed;
    }
    if (!kind) throw ParameterError("experiment kind is missing");
    cfg.kind = *kind;
    cfg.budget = default_budget(cfg.kind);

    for (const auto& [key, value] : entries) {
        if (key == "kind") continue;
        if (key == "fitness") {
            cfg.fitness = parse_fitness_kind(value);
        } else if (key == "n") {
            cfg.n_values.clear();
            for (auto item : split(value, ',')) {
                if (!item.empty()) cfg.n_values.push_back(parse_int<int>(key, item));
            }
        } else if (key == "k") {
            cfg.k_specs = parse_k_specs(value);
        } else if (key == "runs") {
            cfg.runs = parse_int<int>(key, value);
        } else if (key == "base_seed" || key == "seed") {
            cfg.base_seed = parse_int<std::uint64_t>(key, value);
        } else if (key == "budget") {
            cfg.budget = parse_int<std::uint64_t>(key, value);
        } else if (key == "output" || key == "output_path") {
            cfg.output_path = value;
        } else if (key == "snapshots") {
            cfg.snapshots = parse_int<int>(key, value);
        } else if (key == "samples") {
            cfg.samples = parse_int<std::uint64_t>(key, value);
        } else if (key == "epsilon") {
            const auto e = parse_double(value);
            if (!e) throw ParameterError("invalid epsilon '" + value + "'");
            cfg.epsilon = *e;
        } else if (key == "jobs") {
            cfg.jobs = parse_int<unsigned>(key, value);
        } else {
            throw ParameterError("unknown config key '" + key + "'");
        }
    }
    return cfg;
}

}  // namespace cga::experiments
