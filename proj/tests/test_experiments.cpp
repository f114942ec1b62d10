#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cga/errors.hpp"
#include "cga/experiments.hpp"

using namespace cga;
using namespace cga::experiments;

namespace {

ExperimentConfig runtime_config() {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::Runtime;
    cfg.fitness = FitnessKind::Cliff;
    cfg.n_values = {9, 6};
    cfg.k_specs = parse_k_specs("2^3, 2^0..2^1");
    cfg.runs = 5;
    cfg.base_seed = 17;
    cfg.budget = 1'000'000;
    cfg.output_path = "unused.csv";
    cfg.jobs = 1;
    return cfg;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("resolve_k") {
    CHECK(resolve_k("n^0.45", 100) == doctest::Approx(7.9432823472428154268).epsilon(1e-14));
    CHECK(resolve_k("sqrt n", 400) == 20.0);
    CHECK(resolve_k("log n", 8) == doctest::Approx(2.0794415416798359283).epsilon(1e-14));
    CHECK(resolve_k("n", 340) == 340.0);
    CHECK(resolve_k("n^0.75", 16) == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(resolve_k("2^7", 15) == 128.0);
    CHECK_THROWS_AS(resolve_k("n log n", 8), ParameterError);
    CHECK_THROWS_AS(resolve_k("", 8), ParameterError);
}

TEST_CASE("K grids") {
    const auto powers = parse_k_specs("2^0..2^19");
    REQUIRE(powers.size() == 20);
    CHECK(powers.front().resolve(15) == 1.0);
    CHECK(powers.back().resolve(15) == 524288.0);
    CHECK(powers[6].label == "2^6");

    const auto formulas = parse_k_specs("log n, n^0.45, sqrt n, n^0.75, n");
    REQUIRE(formulas.size() == 5);
    CHECK(formulas[0].label == "log n");
    CHECK(formulas[2].resolve(400) == 20.0);

    const auto explicit_k = parse_k_specs("12.5");
    REQUIRE(explicit_k.size() == 1);
    CHECK(explicit_k[0].resolve(1000) == 12.5);

    CHECK_THROWS_AS(parse_k_specs("2^5..2^3"), ParameterError);
    CHECK_THROWS_AS(parse_k_specs("bogus"), ParameterError);
    CHECK_THROWS_AS(parse_k_specs("-3")[0].resolve(10), ParameterError);
}

TEST_CASE("variance horizon") {
    CHECK(variance_horizon(100, std::log(100.0)) == 6726);
    CHECK(variance_horizon(400, 20.0) == 80000);
}

TEST_CASE("runtime reference values") {
    const auto r = runtime_references(15);
    CHECK(r.three_halves_pow_n == doctest::Approx(437.893890380859375).epsilon(1e-14));
    CHECK(r.two_pow_n == 32768.0);
    CHECK(r.n_pow_n_third == doctest::Approx(759375.0).epsilon(1e-14));
}

TEST_CASE("snapshot interval predicate") {
    const double v = 25.0;
    CHECK(in_snapshot_interval(300, 200.0, v, 0.0));
    CHECK(in_snapshot_interval(300, 195.0, v, 0.0));
    CHECK_FALSE(in_snapshot_interval(300, 200.0 - 5 * std::sqrt(v), v, 0.0));
    CHECK_FALSE(in_snapshot_interval(300, 200.5, v, 0.0));
    CHECK_FALSE(in_snapshot_interval(300, 196.0, v, 0.25));
    CHECK(in_snapshot_interval(300, 198.0, v, 0.25));
}

TEST_CASE("config text parsing") {
    const auto entries = parse_config_text(R"(
# runtime grid over 20 powers of two
kind = runtime
fitness = cliff
n = 15
k = 2^0..2^19   # powers of two
runs = 1000
base_seed = 42
budget = 1e8
output = out.csv
)");
    const auto cfg = config_from_entries(entries);
    CHECK(cfg.kind == ExperimentKind::Runtime);
    CHECK(cfg.n_values == std::vector<int>{15});
    CHECK(cfg.k_specs.size() == 20);
    CHECK(cfg.runs == 1000);
    CHECK(cfg.base_seed == 42);
    CHECK(cfg.budget == 100'000'000ULL);
    CHECK(cfg.output_path == "out.csv");
    CHECK_NOTHROW(cfg.validate());

    CHECK_THROWS_AS(parse_config_text("no equals sign"), ParameterError);
    CHECK_THROWS_AS(config_from_entries(parse_config_text("kind = runtime\ncolour = red")), ParameterError);
    CHECK_THROWS_AS(config_from_entries(parse_config_text("kind = runtime"), ExperimentKind::Drift),
                    ParameterError);
    CHECK_THROWS_AS(config_from_entries(parse_config_text("n = 15")), ParameterError);

    auto bad = cfg;
    bad.runs = 0;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    bad = cfg;
    bad.n_values = {16};
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("divisible by 3"), ParameterError);
    bad = cfg;
    bad.fitness = FitnessKind::OneMax;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
}

TEST_CASE("runtime experiment") {
    auto cfg = runtime_config();
    const auto result = runtime_experiment(cfg);
    REQUIRE(result.rows.size() == 2 * 3 * 5);
    // sorted by (n, K, run)
    CHECK(result.rows.front().n == 6);
    CHECK(result.rows.front().k_value == 1.0);
    CHECK(result.rows.back().n == 9);
    CHECK(result.rows.back().k_value == 8.0);
    CHECK(result.rows.back().k_exponent == 3.0);
    for (const auto& r : result.rows) {
        CHECK(r.seed == task_seed(cfg.base_seed, r.n, r.k_value, static_cast<std::uint64_t>(r.run)));
        CHECK(r.evaluations >= 1);
        if (r.censored) {
            CHECK(r.evaluations == cfg.budget);
        } else {
            CHECK(r.evaluations <= cfg.budget);
        }
    }

    SUBCASE("tiny budget censors and records the budget") {
        cfg.budget = 3;
        for (const auto& r : runtime_experiment(cfg).rows) {
            if (r.censored) CHECK(r.evaluations == 3);
        }
    }
    SUBCASE("a single row is reproducible from its keys") {
        auto one = cfg;
        one.n_values = {9};
        one.k_specs = parse_k_specs("2^3");
        const auto single = runtime_experiment(one);
        CHECK(single.rows.back().evaluations == result.rows.back().evaluations);
    }
}

TEST_CASE("parallel and sequential execution give identical CSVs") {
    auto cfg = runtime_config();
    const auto sequential = to_csv(cfg, runtime_experiment(cfg));
    cfg.jobs = 4;
    const auto parallel = to_csv(cfg, runtime_experiment(cfg));
    CHECK(sequential == parallel);
    CHECK(sequential.rfind("# cga-lab v1, kind=runtime, base_seed=17, log_base=e\n"
                           "n,k_exponent,k_value,run,evaluations,censored,seed\n",
                           0) == 0);

    ExperimentConfig var;
    var.kind = ExperimentKind::Variance;
    var.fitness = FitnessKind::OneMax;
    var.n_values = {20, 10};
    var.k_specs = parse_k_specs("log n, sqrt n");
    var.runs = 3;
    var.output_path = "unused.csv";
    var.budget = default_budget(ExperimentKind::Variance);
    var.jobs = 1;
    const auto a = to_csv(var, variance_experiment(var));
    var.jobs = 3;
    const auto b = to_csv(var, variance_experiment(var));
    CHECK(a == b);
}

TEST_CASE("variance experiment") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::Variance;
    cfg.fitness = FitnessKind::Cliff;
    cfg.n_values = {30};
    cfg.k_specs = parse_k_specs("log n, n^0.45");
    cfg.runs = 4;
    cfg.budget = default_budget(ExperimentKind::Variance);
    cfg.output_path = "unused.csv";
    const auto result = variance_experiment(cfg);
    REQUIRE(result.rows.size() == 8);
    CHECK(result.censored_rows == 0);
    for (const auto& r : result.rows) {
        CHECK(r.iterations_executed == variance_horizon(30, r.k_value));
        CHECK(r.variance_final >= 1.0 - 1.0 / 30 - 1e-12);
        CHECK(r.variance_over_sqrt_k == doctest::Approx(r.variance_final / std::sqrt(r.k_value)));
    }
    CHECK(result.rows[0].k_label == "log n");

    cfg.budget = 10;
    const auto capped = variance_experiment(cfg);
    CHECK(capped.censored_rows == 8);
    for (const auto& r : capped.rows) CHECK(r.iterations_executed == 10);
    CHECK(metadata(cfg, capped).find("censored_rows=8") != std::string::npos);
}

TEST_CASE("drift experiment") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::Drift;
    cfg.fitness = FitnessKind::Cliff;
    cfg.n_values = {60};
    cfg.k_specs = parse_k_specs("n^0.45");
    cfg.runs = 1;
    cfg.snapshots = 4;
    cfg.samples = 20000;
    cfg.budget = default_budget(ExperimentKind::Drift);
    cfg.output_path = "unused.csv";
    const auto result = drift_experiment(cfg);
    REQUIRE(result.rows.size() == 4);
    CHECK(result.snapshots_not_reached == 0);
    for (const auto& r : result.rows) {
        CHECK(in_snapshot_interval(r.n, r.potential, r.variance, 0.0));
        CHECK(r.p_right_exact >= 0.0);
        CHECK(r.p_right_exact <= 1.0);
        const double q = 2 * r.p_right_exact * (1 - r.p_right_exact);
        CHECK(std::abs(r.prob_m_empirical - q) <= 4 * std::sqrt(q * (1 - q) / 20000.0));
    }

    cfg.budget = 1;
    const auto unreached = drift_experiment(cfg);
    CHECK(unreached.rows.empty());
    CHECK(unreached.snapshots_not_reached == 4);
    CHECK(metadata(cfg, unreached).find("snapshots_not_reached=4") != std::string::npos);
}

TEST_CASE("run_and_write writes CSV and metadata") {
    const auto dir = std::filesystem::temp_directory_path() / "cga_lab_test_experiments";
    std::filesystem::create_directories(dir);
    auto cfg = runtime_config();
    cfg.output_path = (dir / "rt.csv").string();
    run_and_write(cfg);
    const auto first = slurp(cfg.output_path);
    run_and_write(cfg);
    CHECK(slurp(cfg.output_path) == first);
    const auto meta = slurp(cfg.output_path + ".meta");
    CHECK(meta.find("reference[n=9].two_pow_n=512") != std::string::npos);
    CHECK(meta.find("log_base=e") != std::string::npos);

    cfg.output_path = (dir / "missing" / "rt.csv").string();
    CHECK_THROWS_AS(run_and_write(cfg), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("shipped configs are valid") {
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(CGA_CONFIG_DIR)) {
        if (entry.path().extension() != ".cfg") continue;
        CAPTURE(entry.path().string());
        const auto cfg = config_from_entries(load_config_file(entry.path().string()));
        CHECK_NOTHROW(cfg.validate());
        ++count;
    }
    CHECK(count >= 4);
}
