#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rkb/problem.hpp"
#include "rkb/problems.hpp"
#include "rkb/solver.hpp"

namespace rkb::cli {

enum class Format { csv, json };

enum ExitCode : int { ok = 0, validation_failure = 1, numerical_failure = 2 };

/// start:step:end, inclusive of end when it falls on the lattice.
struct MeshSpec {
    double start = 0.1;
    double step = 0.1;
    double end = 0.6;

    static MeshSpec parse(std::string_view text);
    std::vector<double> coordinates() const;
    std::string str() const;
};

/// Flat key/value settings. Keys use underscores (flags use dashes).
using KeyValues = std::map<std::string, std::string>;

struct RunConfig {
    std::string example = "1";
    std::optional<std::filesystem::path> config_path;
    double alpha = 0.9;
    int p = 5;
    int q = 5;
    int quadrature_nodes = kDefaultQuadratureNodes;
    int picard_iters = 0;
    std::filesystem::path out = "rkb_out";
    Format format = Format::csv;
    MeshSpec mesh;
    bool surface = false;
    std::vector<GridSize> sizes{{3, 3}, {5, 5}, {7, 7}};
    /// Set when the config defines its own problem through the expression catalog.
    std::optional<CatalogProblemSpec> custom;
    /// Fixtures for the verify command.
    double inject_forcing = 0.0;
    bool duplicate_point = false;
    /// Keys that were supplied, in their final form, for the run metadata.
    KeyValues supplied;
};

/// Parses "key = value" lines; '#' starts a comment. Throws ValidationError.
KeyValues parse_config_text(std::string_view text);
KeyValues read_config_file(const std::filesystem::path& path);

/// Applies settings on top of the defaults and validates the result.
RunConfig make_config(const KeyValues& kv);

/// "3x3,5x5" or "9,25,49" (perfect squares, p = q).
std::vector<GridSize> parse_sizes(std::string_view text);

/// Throws ValidationError for an inconsistent configuration.
void validate(const RunConfig& config);

/// The selected example or the catalog problem; range errors become ValidationError.
Problem build_problem(const RunConfig& config);

int cmd_solve(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_convergence(const RunConfig& config, std::ostream& out);

/// Full command line entry point: parses flags, merges the config file and
/// dispatches. Maps ValidationError/DomainError to 1 and NumericalError to 2.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rkb::cli
