#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rkb/cli.hpp"
#include "rkb/error.hpp"

using namespace rkb;
using namespace rkb::cli;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "rkburgers");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int count_failures(const std::string& report) {
    std::istringstream in(report);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) n += line.rfind("FAIL ", 0) == 0;
    return n;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("rkb_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

// Parses the data cell at row xi, column eta of a CSV error table.
double table_cell(const std::string& csv, std::size_t row, std::size_t col) {
    std::istringstream in(csv);
    std::string line;
    for (std::size_t r = 0; r <= row; ++r) std::getline(in, line);
    std::getline(in, line);
    std::istringstream cells(line);
    std::string cell;
    for (std::size_t c = 0; c <= col; ++c) std::getline(cells, cell, ',');
    std::getline(cells, cell, ',');
    return std::stod(cell);
}

}  // namespace

TEST(MeshSpec, ParseAndCoordinates) {
    const MeshSpec m = MeshSpec::parse("0.1:0.1:0.6");
    const std::vector<double> c = m.coordinates();
    ASSERT_EQ(c.size(), 6u);
    EXPECT_EQ(c[2], 0.3);
    EXPECT_EQ(c[5], 0.6);
    EXPECT_EQ(MeshSpec::parse("0:0.25:1").coordinates().back(), 1.0);
    EXPECT_THROW(MeshSpec::parse("0.1:0.1"), ValidationError);
    EXPECT_THROW(MeshSpec::parse("0.1:0:0.6"), ValidationError);
    EXPECT_THROW(MeshSpec::parse("0.5:0.1:1.5"), ValidationError);
}

TEST(Config, ParsesKeyValueText) {
    const KeyValues kv = parse_config_text("# comment\nalpha = 0.8\n\n  p=4 # trailing\ninject-forcing = 1e-3\n");
    EXPECT_EQ(kv.at("alpha"), "0.8");
    EXPECT_EQ(kv.at("p"), "4");
    EXPECT_EQ(kv.at("inject_forcing"), "1e-3");
    EXPECT_THROW(parse_config_text("alpha 0.8"), ValidationError);
}

TEST(Config, ValidationRules) {
    EXPECT_NO_THROW(make_config({{"example", "2"}, {"alpha", "0.8"}, {"p", "10"}, {"q", "10"}}));
    EXPECT_THROW(make_config({{"alpha", "1.2"}}), ValidationError);
    EXPECT_THROW(make_config({{"example", "2"}, {"alpha", "0.4"}}), ValidationError);
    EXPECT_THROW(make_config({{"p", "101"}, {"q", "100"}}), ValidationError);
    EXPECT_THROW(make_config({{"p", "0"}}), ValidationError);
    EXPECT_THROW(make_config({{"format", "xml"}}), ValidationError);
    EXPECT_THROW(make_config({{"colour", "blue"}}), ValidationError);
    EXPECT_THROW(make_config({{"k1", "1"}}), ValidationError);
    EXPECT_THROW(make_config({{"sizes", "10"}}), ValidationError);
    EXPECT_THROW(make_config({{"sizes", "120x100"}}), ValidationError);
}

TEST(Config, SizesSyntax) {
    const auto a = parse_sizes("9,25,49");
    ASSERT_EQ(a.size(), 3u);
    EXPECT_EQ(a[1].p, 5);
    EXPECT_EQ(a[1].q, 5);
    const auto b = parse_sizes("3x4");
    EXPECT_EQ(b[0].p, 3);
    EXPECT_EQ(b[0].q, 4);
}

TEST(Config, CustomProblemFromCatalog) {
    const RunConfig c = make_config(parse_config_text(R"(
        name = heat
        alpha = 1
        k1 = -1
        f = xi^2; -1 xi; -2 eta
        exact_space = xi^2; -1 xi
        exact_time_power = 1
    )"));
    ASSERT_TRUE(c.custom.has_value());
    const Problem p = build_problem(c);
    EXPECT_EQ(p.name, "heat");
    EXPECT_LE(verify_forcing(p, square_mesh(8), 1e-12).max_discrepancy, 1e-12);
}

TEST(SolveCommand, WritesTableAndMetadata) {
    const fs::path dir = scratch("solve");
    const CliRun r = run_cli({"solve", "--example", "1", "--alpha", "0.9", "--p", "5", "--q", "5", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string csv = slurp(dir / "errors.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "xi/eta,0.1,0.2,0.3,0.4,0.5,0.6");
    EXPECT_LE(table_cell(csv, 0, 0), 2.39e-3);

    const auto meta = nlohmann::json::parse(slurp(dir / "metadata.json"));
    for (const char* key : {"alpha", "p", "q", "n", "quadrature_nodes", "picard_iters", "mesh", "format", "example"})
        EXPECT_TRUE(meta["config"].contains(key)) << key;
    EXPECT_EQ(meta["config"]["n"], 25);
    EXPECT_LE(meta["max_abs_error"].get<double>(), 6.62e-3);
    EXPECT_TRUE(meta.contains("wall_seconds"));
    EXPECT_TRUE(meta.contains("version"));
    EXPECT_FALSE(fs::exists(dir / "surface.csv"));
}

TEST(SolveCommand, CsvIsByteIdenticalAcrossRuns) {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    ASSERT_EQ(run_cli({"solve", "--example", "1", "--p", "4", "--q", "4", "--out", a.string()}).code, 0);
    ASSERT_EQ(run_cli({"solve", "--example", "1", "--p", "4", "--q", "4", "--out", b.string()}).code, 0);
    EXPECT_EQ(slurp(a / "errors.csv"), slurp(b / "errors.csv"));
}

TEST(SolveCommand, JsonFormatAndSurface) {
    const fs::path dir = scratch("json");
    const CliRun r = run_cli({"solve", "--example", "2", "--alpha", "0.8", "--p", "4", "--q", "4", "--format", "json",
                           "--surface", "--mesh", "0.2:0.2:0.8", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto table = nlohmann::json::parse(slurp(dir / "errors.json"));
    EXPECT_EQ(table["eta"].size(), 4u);
    EXPECT_EQ(table["rows"][3]["abs_error"].size(), 4u);
    const std::string surface = slurp(dir / "surface.csv");
    EXPECT_EQ(std::count(surface.begin(), surface.end(), '\n'), 51 * 51 + 1);
}

TEST(SolveCommand, ConfigFileWithFlagOverride) {
    const fs::path dir = scratch("config");
    fs::create_directories(dir);
    std::ofstream(dir / "run.cfg") << "example = 1\nalpha = 0.7\np = 3\nq = 3\n";
    const CliRun r = run_cli({"solve", "--config", (dir / "run.cfg").string(), "--p", "4", "--out", (dir / "o").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto meta = nlohmann::json::parse(slurp(dir / "o" / "metadata.json"));
    EXPECT_EQ(meta["config"]["p"], 4);
    EXPECT_EQ(meta["config"]["q"], 3);
    EXPECT_DOUBLE_EQ(meta["config"]["alpha"].get<double>(), 0.7);
}

TEST(SolveCommand, ExitCodes) {
    EXPECT_EQ(run_cli({"solve", "--example", "1", "--alpha", "1.2"}).code, 1);
    EXPECT_EQ(run_cli({"solve", "--example", "7"}).code, 1);
    EXPECT_EQ(run_cli({"solve", "--p", "abc"}).code, 1);
    EXPECT_EQ(run_cli({"bogus"}).code, 1);
    const CliRun dup = run_cli({"solve", "--p", "2", "--q", "2", "--duplicate-point", "--out", scratch("dup").string()});
    EXPECT_EQ(dup.code, 2);
    EXPECT_NE(dup.err.find("pivot 4"), std::string::npos) << dup.err;
}

TEST(ConvergenceCommand, DecreasingErrors) {
    const fs::path dir = scratch("conv");
    const CliRun r = run_cli({"convergence", "--example", "1", "--alpha", "0.9", "--sizes", "9,25,49", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string csv = slurp(dir / "convergence.csv");
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "n,p,q,max_abs_error,wall_seconds");
    std::vector<double> errors;
    while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::string cell;
        for (int k = 0; k < 4; ++k) std::getline(cells, cell, ',');
        errors.push_back(std::stod(cell));
    }
    ASSERT_EQ(errors.size(), 3u);
    EXPECT_LT(errors[2], errors[0]);
    EXPECT_EQ(run_cli({"convergence", "--sizes", "200x200"}).code, 1);
}

TEST(VerifyCommand, FixturesTripTheRightChecks) {
    const CliRun clean = run_cli({"verify"});
    EXPECT_EQ(clean.code, 0) << clean.out;
    EXPECT_EQ(clean.out.find("FAIL"), std::string::npos);

    const CliRun forcing = run_cli({"verify", "--inject-forcing", "1e-3"});
    EXPECT_EQ(forcing.code, 2);
    EXPECT_NE(forcing.out.find("FAIL problems.forcing_consistency"), std::string::npos);
    EXPECT_EQ(count_failures(forcing.out), 1);

    const CliRun dup = run_cli({"verify", "--duplicate-point"});
    EXPECT_EQ(dup.code, 2);
    EXPECT_NE(dup.out.find("FAIL orthonormalize.positive_definite"), std::string::npos);
    EXPECT_NE(dup.out.find("pivot"), std::string::npos);
    EXPECT_EQ(count_failures(dup.out), 1);
}
