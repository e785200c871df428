#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/report_writer.hpp"

using namespace bsq::cli;
namespace fs = std::filesystem;

namespace {

Config parse(const std::string& text) {
    std::istringstream in(text);
    return Config::parse(in);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

/// Fresh scratch directory per test case.
fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("bsq_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

Config with_out(Config cfg, const fs::path& dir) {
    cfg.set("run.out", dir.string());
    return cfg;
}

/// Data rows (non-comment, after the header) of a CSV report.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

const std::string kConfigs = std::string(BSQ_SOURCE_DIR) + "/configs/";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing") {
    const auto c = parse(
        "# comment\n"
        "top = 1\n"
        "[solve]\n"
        "  T = 0.25   # trailing comment\n"
        "modes=128\n"
        "\n"
        "[bilinear]\n"
        "N_list = 16, 32 ,64\n"
        "flag = true\n");
    CHECK(c.get_double("top", 0) == 1.0);
    CHECK(c.get_double("solve.T", 0) == 0.25);
    CHECK(c.get_long("solve.modes", 0) == 128);
    CHECK(c.get_list("bilinear.N_list", {}) == std::vector<double>{16, 32, 64});
    CHECK(c.get_bool("bilinear.flag", false));
    CHECK(c.get_double("solve.missing", 7.5) == 7.5);
    CHECK(c.get_string("solve.T", "") == "0.25");
    CHECK(c.unknown_keys("solve", {"T"}) == std::vector<std::string>{"solve.modes"});
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse("[solve\nT = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[solve]\nT 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[solve]\n= 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[solve]\nT =\n"), ConfigError);
    const auto c = parse("[x]\nn = 1.5\nb = maybe\nd = abc\nl = 1,,2\n");
    CHECK_THROWS_AS(c.get_long("x.n", 0), ConfigError);
    CHECK_THROWS_AS(c.get_bool("x.b", false), ConfigError);
    CHECK_THROWS_AS(c.get_double("x.d", 0), ConfigError);
    CHECK_THROWS_AS(c.get_list("x.l", {}), ConfigError);
    CHECK_THROWS_AS(Config::load("/nonexistent/bsq.conf"), ConfigError);
}

TEST_CASE("later settings override earlier ones") {
    auto c = parse("[solve]\nT = 1\nT = 2\n");
    CHECK(c.get_double("solve.T", 0) == 2.0);
    c.set("solve.T", "3");
    CHECK(c.get_double("solve.T", 0) == 3.0);
}

TEST_CASE("CSV and JSON rendering") {
    Json doc;
    doc["command"] = "demo";
    doc["config"] = {{"a", 0.1}, {"name", "x,y"}};
    doc["summary"] = {{"ok", true}};
    doc["columns"] = {"N", "value", "note"};
    doc["rows"] = Json::array({Json::array({16, 0.5, nullptr}), Json::array({32, 1.0 / 3.0, "q\"uote"})});
    doc["footer"] = Json::array({nullptr, 2.0, "fit"});
    const std::string csv = render_csv(doc);
    CHECK(csv ==
          "# command = demo\n"
          "# config.a = 0.10000000000000001\n"
          "# config.name = \"x,y\"\n"
          "# summary.ok = true\n"
          "N,value,note\n"
          "16,0.5,\n"
          "32,0.33333333333333331,\"q\"\"uote\"\n"
          ",2,fit\n");
    const Json j = Json::parse(render_json(doc));
    CHECK(j["rows"][0]["N"] == 16);
    CHECK_FALSE(j["rows"][0].contains("note"));
    CHECK(j["rows"][1]["note"] == "q\"uote");
    CHECK(j["footer"]["note"] == "fit");
    CHECK(render_csv(doc) == csv);
    CHECK(std::stod(format_number(0.1)) == 0.1);
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("run options") {
    CHECK(RunOptions::from(parse("[run]\nformat = json\n")).format == Format::json);
    CHECK_THROWS_AS(RunOptions::from(parse("[run]\nformat = xml\n")), ConfigError);
    CHECK_THROWS_AS(RunOptions::from(parse("[run]\nworkers = 0\n")), ConfigError);
    CHECK_THROWS_AS(RunOptions::from(parse("[run]\ncolour = red\n")), ConfigError);
}

TEST_CASE("unknown or invalid keys are configuration errors") {
    const auto dir = scratch("invalid");
    std::ostringstream log;
    CHECK_THROWS_AS(cmd_solve(with_out(parse("[solve]\nbogus = 1\n"), dir), log), ConfigError);
    CHECK_THROWS_AS(cmd_solve(with_out(parse("[solve]\nbeta = 2\n"), dir), log), ConfigError);
    CHECK_THROWS_AS(cmd_solve(with_out(parse("[solve]\nmodes = 7\n"), dir), log), ConfigError);
    CHECK_THROWS_AS(cmd_solve(with_out(parse("[solve]\ntime_nodes = -1\n"), dir), log), ConfigError);
    CHECK_THROWS_AS(cmd_bilinear_sweep(with_out(parse("[bilinear]\nN_list = 16,32\n"), dir), log), ConfigError);
    CHECK_THROWS_AS(cmd_illposed_sweep(with_out(parse("[illposed]\nepsilon = -1\n"), dir), log), ConfigError);
    CHECK_THROWS_AS(cmd_checks(with_out(parse("[checks]\nfoo = 1\n"), dir), log), ConfigError);
}

TEST_CASE("zero data solve reports zero norms") {
    const auto dir = scratch("zero");
    std::ostringstream log;
    auto cfg = with_out(parse("[solve]\nphi_norm = 0\nmodes = 64\ntime_nodes = 21\n"), dir);
    CHECK(cmd_solve(cfg, log) == kOk);
    const auto rows = csv_rows(slurp(dir / "solve.csv"));
    REQUIRE(rows.size() == 21);
    for (const auto& r : rows) {
        CHECK(std::stod(r[1]) == 0.0);
        CHECK(std::stod(r[2]) == 0.0);
    }
}

TEST_CASE("small data solve converges and matches the oracle") {
    const auto dir = scratch("small");
    std::ostringstream log;
    auto cfg = Config::load(kConfigs + "solve_small.conf");
    cfg.set("run.format", "json");
    CHECK(cmd_solve(with_out(cfg, dir), log) == kOk);
    const Json j = Json::parse(slurp(dir / "solve.json"));
    CHECK(j["summary"]["converged"] == true);
    CHECK(j["summary"]["max_discrepancy"].get<double>() <= 1e-6);
    CHECK(j["rows"].size() == 201);
    CHECK(j["config"].contains("solve.T"));
    CHECK_FALSE(j["config"].contains("run.out"));
}

TEST_CASE("oversized data exit with the no-contraction code") {
    const auto dir = scratch("oversized");
    std::ostringstream log;
    const auto cfg = Config::load(kConfigs + "solve_oversized.conf");
    CHECK(cmd_solve(with_out(cfg, dir), log) == kNoContraction);
    CHECK(log.str().find("contracts at T") != std::string::npos);
    const Json j = Json::parse(render_json(Json::object({{"command", "x"},
                                                         {"config", Json::object()},
                                                         {"summary", Json::object()},
                                                         {"columns", Json::array()},
                                                         {"rows", Json::array()}})));
    CHECK(j["rows"].empty());
    CHECK(fs::exists(dir / "solve.csv"));
}

TEST_CASE("checks pass and detect a tampered tolerance") {
    const auto dir = scratch("checks");
    std::ostringstream log;
    CHECK(cmd_checks(with_out(Config::load(kConfigs + "checks.conf"), dir), log) == kOk);
    const std::string first = slurp(dir / "checks.csv");
    CHECK(cmd_checks(with_out(Config::load(kConfigs + "checks.conf"), dir), log) == kOk);
    CHECK(slurp(dir / "checks.csv") == first);
    auto bad = with_out(parse("[checks]\ntolerance_scale = -1\n"), dir);
    CHECK(cmd_checks(bad, log) == kFailed);
}

TEST_CASE("sweep reports are independent of the worker count") {
    const auto dir = scratch("workers");
    std::ostringstream log;
    auto cfg = parse("[bilinear]\nN_list = 16,32,64\n");
    cfg.set("run.out", (dir / "one").string());
    cmd_bilinear_sweep(cfg, log);
    cfg.set("run.out", (dir / "three").string());
    cfg.set("run.workers", "3");
    cmd_bilinear_sweep(cfg, log);
    const auto a = slurp(dir / "one" / "bilinear.csv"), b = slurp(dir / "three" / "bilinear.csv");
    CHECK_FALSE(a.empty());
    CHECK(a == b);
    const auto rows = csv_rows(a);
    CHECK(rows.size() == 4);  // three points and the fit footer
}

TEST_CASE("ill-posedness sweep passes on the shipped configuration") {
    const auto dir = scratch("illposed");
    std::ostringstream log;
    CHECK(cmd_illposed_sweep(with_out(Config::load(kConfigs + "illposed.conf"), dir), log) == kOk);
    CHECK(cmd_illposed_sweep(with_out(Config::load(kConfigs + "illposed_info.conf"), dir), log) == kOk);
    CHECK(log.str().find("informational") != std::string::npos);
}

}
