// End-to-end checks of the command-line binary: exit codes, the machine-
// readable error record on stderr, output stamping, and rerun determinism.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lfecon/model_io.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("lfecon_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    fs::path file(const std::string& name) const { return path / name; }
};

struct RunResult {
    int exit_code = -1;
    std::string stderr_text;
};

// Runs the binary with the given arguments, capturing stderr.
RunResult run_cli(const std::string& args, const TempDir& scratch) {
    const fs::path err = scratch.file("stderr.txt");
    const std::string cmd = std::string(LFECON_CLI_PATH) + " " + args + " >/dev/null 2>" +
                            err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(err);
    std::ostringstream buf;
    buf << in.rdbuf();
    r.stderr_text = buf.str();
    return r;
}

std::string bundled_config() { return std::string(LFECON_DATA_DIR) + "/config.json"; }

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

// The error record is one JSON object per failure: {"error": kind, "message": ...}.
std::string error_kind(const std::string& stderr_text) {
    const auto record = nlohmann::json::parse(stderr_text);
    REQUIRE(record.contains("error"));
    REQUIRE(record.contains("message"));
    return record.at("error").get<std::string>();
}

void write_text(const fs::path& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary);
    out << body;
    REQUIRE(out.good());
}

// Minimal one-series data directory used by the failure-path tests.
// The response follows an exact linear law of lagged driver growth, so the
// calibration itself succeeds; what fails is up to the caller's config.
void write_failure_fixture(const TempDir& dir) {
    std::string driver = "period,value\n";
    std::string resp = "period,value\n";
    std::string flat = "period,value\n";
    double level = 100.0;
    std::vector<double> growth;
    for (int k = 0; k <= 25; ++k) {
        const double g = 0.02 + 0.01 * (k % 3 == 0 ? 1.0 : -0.5);
        level *= 1.0 + g;
        growth.push_back(g);
        driver += std::to_string(1970 + k) + "," + std::to_string(level) + "\n";
    }
    for (int k = 1; k <= 25; ++k) {
        resp += std::to_string(1970 + k) + "," +
                std::to_string(0.4 * growth[k - 1] + 0.01) + "\n";
        flat += std::to_string(1970 + k) + ",0.05\n";
    }
    write_text(dir.file("driver.csv"), driver);
    write_text(dir.file("resp.csv"), resp);
    write_text(dir.file("flat.csv"), flat);

    nlohmann::json catalog{{"version", 1}};
    for (const char* id : {"driver", "resp", "flat"})
        catalog["series"][id] = {{"file", std::string(id) + ".csv"},
                                 {"frequency", "annual"},
                                 {"units", "test"},
                                 {"source", "test fixture"},
                                 {"vintage", "v1"}};
    write_text(dir.file("catalog.json"), catalog.dump(2));

    nlohmann::json config{
        {"version", 1},
        {"catalog", "catalog.json"},
        {"seed", 1},
        {"calibrations",
         {{{"name", "m"}, {"driver", "driver"}, {"response", "resp"}}}},
        {"evaluations",
         {{{"name", "e"}, {"observed", "flat"}, {"predicted_of", "m"}}}}};
    write_text(dir.file("config.json"), config.dump(2));
}

}  // namespace

TEST_CASE("urtest succeeds and stamps outputs with command, config hash, and seed") {
    TempDir scratch;
    const fs::path out = scratch.file("out");
    const RunResult r =
        run_cli("urtest --config " + bundled_config() + " --out " + out.string(), scratch);
    REQUIRE(r.exit_code == 0);
    REQUIRE(fs::exists(out / "urtest.csv"));
    REQUIRE(fs::exists(out / "urtest.txt"));

    const std::string header = first_line(out / "urtest.csv");
    CHECK(header.rfind("# lfecon v1 command=urtest config=", 0) == 0);
    CHECK(header.find(" seed=20110815") != std::string::npos);
    CHECK(first_line(out / "urtest.txt") == header);
}

TEST_CASE("--seed overrides the seed recorded in the stamp") {
    TempDir scratch;
    const fs::path out = scratch.file("out");
    const RunResult r = run_cli(
        "urtest --config " + bundled_config() + " --out " + out.string() + " --seed 7",
        scratch);
    REQUIRE(r.exit_code == 0);
    CHECK(first_line(out / "urtest.csv").find(" seed=7") != std::string::npos);
}

TEST_CASE("--series redirects a catalog id to another file") {
    TempDir scratch;
    const fs::path copy = scratch.file("lf_copy.csv");
    fs::copy_file(fs::path(LFECON_DATA_DIR) / "lf.csv", copy);

    const fs::path base = scratch.file("base");
    const fs::path redirected = scratch.file("redirected");
    REQUIRE(run_cli("urtest --config " + bundled_config() + " --out " + base.string(),
                    scratch)
                .exit_code == 0);
    REQUIRE(run_cli("urtest --config " + bundled_config() + " --out " +
                        redirected.string() + " --series lf=" + copy.string(),
                    scratch)
                .exit_code == 0);
    CHECK(read_file(base / "urtest.csv") == read_file(redirected / "urtest.csv"));
}

TEST_CASE("the full pipeline writes the complete output set, byte-identical on rerun") {
    TempDir scratch;
    const fs::path a = scratch.file("a");
    const fs::path b = scratch.file("b");
    REQUIRE(run_cli("all --config " + bundled_config() + " --out " + a.string(), scratch)
                .exit_code == 0);
    REQUIRE(run_cli("all --config " + bundled_config() + " --out " + b.string(), scratch)
                .exit_code == 0);

    for (const char* name :
         {"urtest.csv", "urtest.txt", "calibrate.csv", "calibrate.txt", "coint.txt",
          "coint_rank.csv", "coint_residual.csv", "evaluate.csv", "evaluate.txt",
          "forecast.csv", "forecast.txt", "plot_annual.csv", "plot_cumulative.csv",
          "plot_smoothed.csv", "plot_relative_error.csv", "plot_forecast.csv",
          "cpi_model.model", "cpi_model.predicted.csv", "cpi_model.residual.csv",
          "ue_model.model", "cpi_general.model"})
        CHECK_MESSAGE(fs::exists(a / name), name);

    std::map<std::string, std::string> first;
    for (const auto& entry : fs::recursive_directory_iterator(a))
        if (entry.is_regular_file())
            first[fs::relative(entry.path(), a).string()] = read_file(entry.path());
    std::size_t compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(b))
        if (entry.is_regular_file()) {
            const std::string rel = fs::relative(entry.path(), b).string();
            REQUIRE(first.count(rel) == 1);
            CHECK_MESSAGE(first[rel] == read_file(entry.path()), rel);
            ++compared;
        }
    CHECK(compared == first.size());
    CHECK(compared >= 21);

    // The emitted model file must load back as the three-segment inflation model.
    const lfecon::AnyModel m = lfecon::load_model(a / "cpi_model.model");
    REQUIRE(std::holds_alternative<lfecon::PiecewiseLagModel>(m));
    CHECK(std::get<lfecon::PiecewiseLagModel>(m).segments.size() == 3);
}

TEST_CASE("configuration problems exit 2 with a config error record") {
    TempDir scratch;

    SUBCASE("missing config file") {
        const RunResult r = run_cli("urtest --config " + scratch.file("nope.json").string(),
                                    scratch);
        CHECK(r.exit_code == 2);
        CHECK(error_kind(r.stderr_text) == "config");
    }
    SUBCASE("unsupported config version") {
        write_text(scratch.file("v2.json"), "{\"version\": 2, \"catalog\": \"x.json\"}");
        const RunResult r =
            run_cli("urtest --config " + scratch.file("v2.json").string(), scratch);
        CHECK(r.exit_code == 2);
        CHECK(error_kind(r.stderr_text) == "config");
    }
    SUBCASE("unknown command") {
        const RunResult r = run_cli("frobnicate --config " + bundled_config(), scratch);
        CHECK(r.exit_code == 2);
        CHECK(error_kind(r.stderr_text) == "config");
    }
    SUBCASE("malformed --series override") {
        const RunResult r = run_cli(
            "urtest --config " + bundled_config() + " --series not-an-assignment", scratch);
        CHECK(r.exit_code == 2);
        CHECK(error_kind(r.stderr_text) == "config");
    }
}

TEST_CASE("unreadable series data exits 3 with a data error record") {
    TempDir scratch;
    const RunResult r =
        run_cli("urtest --config " + bundled_config() + " --series lf=" +
                    scratch.file("missing.csv").string(),
                scratch);
    CHECK(r.exit_code == 3);
    CHECK(error_kind(r.stderr_text) == "data");
}

TEST_CASE("degenerate statistics exit 4 with a numeric error record") {
    TempDir scratch;
    write_failure_fixture(scratch);
    // Evaluating a model against a constant observed series has no variance
    // to explain, which the metrics refuse to paper over.
    const RunResult r = run_cli(
        "evaluate --config " + scratch.file("config.json").string() + " --out " +
            scratch.file("out").string(),
        scratch);
    CHECK(r.exit_code == 4);
    CHECK(error_kind(r.stderr_text) == "numeric");
}
