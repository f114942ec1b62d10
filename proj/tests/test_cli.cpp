#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cga/cli.hpp"

using namespace cga::cli;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string field(const std::string& text, const std::string& key) {
    const auto pos = text.find(key + "=");
    if (pos == std::string::npos) return {};
    const auto start = pos + key.size() + 1;
    const auto end = text.find_first_of(" \n", start);
    return text.substr(start, end - start);
}

struct TempDir {
    std::filesystem::path path;
    TempDir() : path(std::filesystem::temp_directory_path() / "cga_lab_test_cli") {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("run is deterministic for a fixed seed") {
    const std::vector<std::string> args = {"run", "--n", "15", "--k", "8", "--seed", "123"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(field(a.out, "censored") == "false");
    CHECK(field(a.out, "seed") == "123");
    CHECK(std::stoull(field(a.out, "evaluations")) >= 1);
}

TEST_CASE("run finds the OneMax optimum with a large update strength") {
    const auto r = invoke({"run", "--n", "4", "--k", "1e9", "--fitness", "onemax", "--max-evals", "100"});
    REQUIRE(r.code == kExitOk);
    CHECK(field(r.out, "censored") == "false");
}

TEST_CASE("run accepts K formulas and reports censoring") {
    const auto r = invoke({"run", "--n", "30", "--k", "sqrt n", "--max-evals", "2", "--seed", "1"});
    REQUIRE(r.code == kExitOk);
    CHECK(field(r.out, "censored") == "true");
    CHECK(field(r.out, "evaluations") == "2");
}

TEST_CASE("run rejects invalid parameters") {
    const auto r = invoke({"run", "--n", "16", "--k", "4"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("divisible by 3") != std::string::npos);
    CHECK(invoke({"run", "--n", "15", "--k", "-1"}).code == kExitUsage);
    CHECK(invoke({"run", "--n", "15"}).code == kExitUsage);
    CHECK(invoke({"bogus"}).code == kExitUsage);
    CHECK(invoke({}).code == kExitUsage);
    CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("run writes a decimated trace") {
    TempDir dir;
    const auto path = dir / "trace.csv";
    const auto r = invoke({"run", "--n", "30", "--k", "10", "--seed", "5", "--max-evals", "400", "--trace", path,
                           "--trace-every", "10"});
    REQUIRE(r.code == kExitOk);
    std::istringstream lines(slurp(path));
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("# cga-lab v1, kind=trace, seed=5", 0) == 0);
    std::getline(lines, line);
    CHECK(line == "t,potential_before,potential_after,variance_before,variance_after,ones_x,ones_y,event_class,"
                  "delta_potential");
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(std::stoi(line.substr(0, line.find(','))) % 10 == 0);
        ++rows;
    }
    CHECK(rows >= 1);
    CHECK(rows <= 20);

    CHECK(invoke({"run", "--n", "15", "--k", "4", "--trace", dir / "no/such/dir/t.csv"}).code == kExitIo);
}

TEST_CASE("predict") {
    const auto r = invoke({"predict", "--n", "300", "--k", "100", "--potential", "200", "--variance", "25"});
    REQUIRE(r.code == kExitOk);
    CHECK(field(r.out, "threshold") == "200");
    CHECK(std::stod(field(r.out, "p_right")) == 0.5);
    CHECK(std::stod(field(r.out, "drift_total")) == doctest::Approx(-0.019947114020071633897).epsilon(1e-12));
    CHECK(std::stod(field(r.out, "correction_bound")) == 0.02);
    CHECK(invoke({"predict", "--n", "300", "--k", "100", "--potential", "200", "--variance", "0"}).code ==
          kExitUsage);
}

TEST_CASE("pb") {
    const auto r = invoke({"pb", "--n", "3", "--uniform", "0.5"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.rfind("0.125 0.375 0.375 0.125\n", 0) == 0);
    CHECK(field(r.out, "mean") == "1.5");
    CHECK(field(r.out, "sampling_variance") == "0.75");

    TempDir dir;
    const auto path = dir / "freqs.txt";
    std::ofstream(path) << "# two bits\n0.5, 1\n";
    const auto f = invoke({"pb", "--freqs", path});
    REQUIRE(f.code == kExitOk);
    CHECK(f.out.rfind("0 0.5 0.5\n", 0) == 0);

    std::ofstream(path) << "0.5 1.5\n";
    CHECK(invoke({"pb", "--freqs", path}).code == kExitUsage);
    CHECK(invoke({"pb", "--freqs", dir / "missing.txt"}).code == kExitIo);
    CHECK(invoke({"pb", "--n", "3"}).code == kExitUsage);
}

TEST_CASE("experiment verbs") {
    TempDir dir;
    const auto cfg_path = dir / "grid.cfg";
    std::ofstream(cfg_path) << "fitness = cliff\nn = 15\nk = 2^0..2^19\nruns = 2\nbudget = 40\nseed = 9\n";

    SUBCASE("runtime grid from a config file") {
        const auto out = dir / "rt.csv";
        const auto r = invoke({"runtime-exp", "--config", cfg_path, "--output", out});
        REQUIRE(r.code == kExitOk);
        const auto csv = slurp(out);
        CHECK(csv.rfind("# cga-lab v1, kind=runtime, base_seed=9, log_base=e\n", 0) == 0);
        int lines = 0;
        for (char c : csv) lines += c == '\n';
        CHECK(lines == 2 + 20 * 2);
        CHECK(std::filesystem::exists(out + ".meta"));

        const auto again = invoke({"runtime-exp", "--config", cfg_path, "--output", out, "--jobs", "3"});
        REQUIRE(again.code == kExitOk);
        CHECK(slurp(out) == csv);
    }
    SUBCASE("flags override config entries") {
        const auto out = dir / "rt.csv";
        REQUIRE(invoke({"runtime-exp", "--config", cfg_path, "--output", out, "--k", "4", "--runs", "3"}).code ==
                kExitOk);
        int lines = 0;
        for (char c : slurp(out)) lines += c == '\n';
        CHECK(lines == 2 + 3);
    }
    SUBCASE("variance and drift verbs") {
        const auto vout = dir / "var.csv";
        REQUIRE(invoke({"variance-exp", "--fitness", "onemax", "--n", "10,20", "--k", "log n", "--runs", "2",
                        "--output", vout})
                    .code == kExitOk);
        CHECK(slurp(vout).find("n,k_label,k_value,run,iterations_executed,variance_final,variance_over_sqrtK,"
                               "potential_final\n") != std::string::npos);

        const auto dout = dir / "drift.csv";
        REQUIRE(invoke({"drift-exp", "--n", "60", "--k", "n^0.45", "--snapshots", "2", "--samples", "1000",
                        "--output", dout})
                    .code == kExitOk);
        CHECK(slurp(dout).find("n,k_value,snapshot_id,potential,variance,p_right_exact,drift_empirical,"
                               "drift_stderr,drift_predicted,prob_M_empirical\n") != std::string::npos);
    }
    SUBCASE("errors") {
        CHECK(invoke({"runtime-exp", "--config", cfg_path, "--output", dir / "x.csv", "--runs", "0"}).code ==
              kExitUsage);
        CHECK(invoke({"runtime-exp", "--config", cfg_path, "--output", dir / "no/such/x.csv"}).code == kExitIo);
        CHECK(invoke({"runtime-exp", "--config", cfg_path}).code == kExitUsage);
        CHECK(invoke({"runtime-exp", "--config", dir / "missing.cfg"}).code == kExitUsage);
        CHECK(invoke({"runtime-exp", "--config", cfg_path, "--output", dir / "x.csv", "--fitness", "onemax"}).code ==
              kExitUsage);
    }
}
