#include "rkb/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "rkb/error.hpp"
#include "rkb/verify.hpp"

#ifndef RKB_VERSION
#define RKB_VERSION "0.0.0"
#endif

namespace rkb::cli {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr int kMaxCollocationPoints = 10000;
constexpr int kSurfaceSide = 51;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string normalize_key(std::string key) {
    for (char& c : key)
        if (c == '-') c = '_';
    return key;
}

double to_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0' || !std::isfinite(v))
        throw ValidationError(key + ": expected a number, got '" + value + "'");
    return v;
}

int to_int(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (value.empty() || *end != '\0' || v < -1000000000L || v > 1000000000L)
        throw ValidationError(key + ": expected an integer, got '" + value + "'");
    return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
    if (value == "0" || value == "false" || value == "no" || value == "off") return false;
    throw ValidationError(key + ": expected true/false, got '" + value + "'");
}

// 1.0E-4 style, six significant digits.
std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5E", v);
    return buf;
}

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ValidationError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + path.string() + "'");
    f << content;
}

const char* format_name(Format f) { return f == Format::csv ? "csv" : "json"; }

json config_json(const RunConfig& c, const Problem& problem) {
    json j;
    j["problem"] = problem.name;
    j["example"] = c.custom ? json(nullptr) : json(c.example);
    j["config"] = c.config_path ? json(c.config_path->string()) : json(nullptr);
    j["alpha"] = problem.alpha.value();
    j["p"] = c.p;
    j["q"] = c.q;
    j["n"] = c.p * c.q;
    j["quadrature_nodes"] = c.quadrature_nodes;
    j["picard_iters"] = c.picard_iters;
    j["mesh"] = c.mesh.str();
    j["out"] = c.out.string();
    j["format"] = format_name(c.format);
    j["surface"] = c.surface;
    j["duplicate_point"] = c.duplicate_point;
    j["supplied"] = c.supplied;
    return j;
}

CollocationGrid make_grid(const RunConfig& c) {
    CollocationGrid grid = CollocationGrid::uniform(c.p, c.q);
    if (!c.duplicate_point) return grid;
    std::vector<Point> pts = grid.points();
    pts.push_back(pts.back());
    return CollocationGrid::from_points(std::move(pts));
}

std::string error_table_csv(const ErrorReport& r, const std::vector<double>& coords) {
    std::ostringstream os;
    os << "xi/eta";
    for (double eta : coords) os << ',' << coord(eta);
    os << '\n';
    std::size_t k = 0;
    for (double xi : coords) {
        os << coord(xi);
        for (std::size_t j = 0; j < coords.size(); ++j) os << ',' << sci(r.rows[k++].abs_error);
        os << '\n';
    }
    return os.str();
}

json error_table_json(const ErrorReport& r, const std::vector<double>& coords) {
    json rows = json::array();
    std::size_t k = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        json abs = json::array();
        json approx = json::array();
        json exact = json::array();
        for (std::size_t j = 0; j < coords.size(); ++j, ++k) {
            abs.push_back(r.rows[k].abs_error);
            approx.push_back(r.rows[k].approx);
            exact.push_back(r.rows[k].exact);
        }
        rows.push_back({{"xi", coords[i]}, {"abs_error", abs}, {"approx", approx}, {"exact", exact}});
    }
    return {{"eta", coords}, {"rows", rows}, {"max_abs_error", r.max_abs_error}, {"mean_abs_error", r.mean_abs_error}};
}

std::string solution_table_csv(const ApproximateSolution& s, const std::vector<double>& coords) {
    std::ostringstream os;
    os << "xi/eta";
    for (double eta : coords) os << ',' << coord(eta);
    os << '\n';
    for (double xi : coords) {
        os << coord(xi);
        for (double eta : coords) os << ',' << sci(s.evaluate(xi, eta));
        os << '\n';
    }
    return os.str();
}

std::string surface_csv(const ApproximateSolution& s) {
    std::ostringstream os;
    os << "xi,eta,y\n";
    for (int i = 0; i < kSurfaceSide; ++i) {
        const double xi = static_cast<double>(i) / (kSurfaceSide - 1);
        for (int j = 0; j < kSurfaceSide; ++j) {
            const double eta = static_cast<double>(j) / (kSurfaceSide - 1);
            os << coord(xi) << ',' << coord(eta) << ',' << sci(s.evaluate(xi, eta)) << '\n';
        }
    }
    return os.str();
}

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ValidationError& e) {
        err << "rkburgers: invalid input: " << e.what() << '\n';
        return validation_failure;
    } catch (const DomainError& e) {
        err << "rkburgers: invalid input: " << e.what() << '\n';
        return validation_failure;
    } catch (const NumericalError& e) {
        err << "rkburgers: numerical failure: " << e.what() << '\n';
        return numerical_failure;
    } catch (const std::exception& e) {
        err << "rkburgers: numerical failure: " << e.what() << '\n';
        return numerical_failure;
    }
}

}  // namespace

MeshSpec MeshSpec::parse(std::string_view text) {
    const std::string s = trim(text);
    const auto a = s.find(':');
    const auto b = (a == std::string::npos) ? std::string::npos : s.find(':', a + 1);
    if (a == std::string::npos || b == std::string::npos)
        throw ValidationError("mesh: expected start:step:end, got '" + s + "'");
    MeshSpec m{to_double("mesh", s.substr(0, a)), to_double("mesh", s.substr(a + 1, b - a - 1)),
               to_double("mesh", s.substr(b + 1))};
    if (!(m.step > 0.0)) throw ValidationError("mesh: step must be positive");
    if (!(m.start >= 0.0 && m.end <= 1.0 && m.start <= m.end))
        throw ValidationError("mesh: need 0 <= start <= end <= 1");
    if ((m.end - m.start) / m.step > 1000.0) throw ValidationError("mesh: more than 1001 coordinates");
    return m;
}

std::vector<double> MeshSpec::coordinates() const {
    std::vector<double> out;
    const auto count = static_cast<int>(std::floor((end - start) / step + 1e-9));
    for (int k = 0; k <= count; ++k) {
        // Snap to 12 decimals so 0.1 + 2*0.1 prints and evaluates as 0.3.
        const double v = std::round((start + k * step) * 1e12) / 1e12;
        out.push_back(std::min(v, 1.0));
    }
    return out;
}

std::string MeshSpec::str() const { return coord(start) + ":" + coord(step) + ":" + coord(end); }

KeyValues parse_config_text(std::string_view text) {
    KeyValues kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = normalize_key(trim(t.substr(0, eq)));
        if (key.empty()) throw ValidationError("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = trim(t.substr(eq + 1));
    }
    return kv;
}

KeyValues read_config_file(const fs::path& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot read config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

std::vector<GridSize> parse_sizes(std::string_view text) {
    std::vector<GridSize> sizes;
    std::string s = trim(text);
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        if (const auto x = item.find('x'); x != std::string::npos) {
            sizes.push_back({to_int("sizes", item.substr(0, x)), to_int("sizes", item.substr(x + 1))});
        } else {
            const int n = to_int("sizes", item);
            const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(std::max(n, 0)))));
            if (r * r != n || n < 1) throw ValidationError("sizes: " + item + " is not a perfect square; use PxQ");
            sizes.push_back({r, r});
        }
    }
    return sizes;
}

RunConfig make_config(const KeyValues& kv) {
    static const std::set<std::string> known{
        "example", "config",  "alpha", "p",  "q",  "nodes", "picard", "mesh", "out",  "format",
        "surface", "sizes",   "name",  "k1", "k2", "k3",    "k4",     "f",    "exact_space",
        "exact_time_power",   "inject_forcing", "duplicate_point"};

    RunConfig c;
    for (const auto& [key, value] : kv) {
        if (!known.contains(key)) throw ValidationError("unknown setting '" + key + "'");
    }
    c.supplied = kv;

    auto get = [&kv](const char* key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (auto v = get("example")) c.example = *v;
    if (auto v = get("config")) c.config_path = *v;
    if (auto v = get("alpha")) c.alpha = to_double("alpha", *v);
    if (auto v = get("p")) c.p = to_int("p", *v);
    if (auto v = get("q")) c.q = to_int("q", *v);
    if (auto v = get("nodes")) c.quadrature_nodes = to_int("nodes", *v);
    if (auto v = get("picard")) c.picard_iters = to_int("picard", *v);
    if (auto v = get("mesh")) c.mesh = MeshSpec::parse(*v);
    if (auto v = get("out")) c.out = *v;
    if (auto v = get("format")) {
        if (*v == "csv") c.format = Format::csv;
        else if (*v == "json") c.format = Format::json;
        else throw ValidationError("format: expected csv or json, got '" + *v + "'");
    }
    if (auto v = get("surface")) c.surface = to_bool("surface", *v);
    if (auto v = get("sizes")) c.sizes = parse_sizes(*v);
    if (auto v = get("inject_forcing")) c.inject_forcing = to_double("inject_forcing", *v);
    if (auto v = get("duplicate_point")) c.duplicate_point = to_bool("duplicate_point", *v);

    if (get("f")) {
        CatalogProblemSpec spec;
        spec.alpha = c.alpha;
        if (auto v = get("name")) spec.name = *v;
        auto expr = [&](const char* key, CatalogExpression& dst) {
            if (auto v = get(key)) dst = CatalogExpression::parse(*v);
        };
        expr("k1", spec.k1);
        expr("k2", spec.k2);
        expr("k3", spec.k3);
        expr("k4", spec.k4);
        expr("f", spec.f);
        if (auto v = get("exact_space")) spec.exact_space = CatalogExpression::parse(*v);
        if (auto v = get("exact_time_power")) spec.exact_time_power = to_double("exact_time_power", *v);
        c.custom = std::move(spec);
    } else {
        for (const char* key : {"name", "k1", "k2", "k3", "k4", "exact_space", "exact_time_power"})
            if (get(key)) throw ValidationError(std::string(key) + " is only meaningful together with f");
    }

    validate(c);
    return c;
}

void validate(const RunConfig& c) {
    if (c.p < 1 || c.q < 1) throw ValidationError("p and q must be positive");
    if (static_cast<long>(c.p) * c.q > kMaxCollocationPoints)
        throw ValidationError("p*q = " + std::to_string(static_cast<long>(c.p) * c.q) + " exceeds " +
                              std::to_string(kMaxCollocationPoints));
    for (const GridSize& s : c.sizes) {
        if (s.p < 1 || s.q < 1) throw ValidationError("sizes: p and q must be positive");
        if (static_cast<long>(s.p) * s.q > kMaxCollocationPoints)
            throw ValidationError("sizes: " + std::to_string(s.p) + "x" + std::to_string(s.q) + " exceeds " +
                                  std::to_string(kMaxCollocationPoints) + " points");
    }
    if (c.quadrature_nodes < 1 || c.quadrature_nodes > 1024) throw ValidationError("nodes must be in 1..1024");
    if (c.picard_iters < 0) throw ValidationError("picard must be non-negative");
    if (!std::isfinite(c.inject_forcing)) throw ValidationError("inject_forcing must be finite");
    // Range of alpha depends on the problem.
    (void)build_problem(c);
}

Problem build_problem(const RunConfig& c) {
    try {
        if (c.custom) return build_catalog_problem(*c.custom);
        return build_example(parse_example_id(c.example), c.alpha);
    } catch (const DomainError& e) {
        throw ValidationError(e.what());
    }
}

int cmd_solve(const RunConfig& c, std::ostream& out) {
    const Problem problem = build_problem(c);
    const std::vector<double> coords = c.mesh.coordinates();

    const auto start = std::chrono::steady_clock::now();
    const ApproximateSolution s =
        solve(problem, make_grid(c), SolverOptions{.quadrature_nodes = c.quadrature_nodes, .picard_iters = c.picard_iters});
    const std::chrono::duration<double> solve_time = std::chrono::steady_clock::now() - start;

    ensure_dir(c.out);
    json meta;
    meta["config"] = config_json(c, problem);
    meta["version"] = RKB_VERSION;
    meta["quadrature"] = {{"rule", "gauss-jacobi"}, {"nodes", c.quadrature_nodes}, {"classical", problem.alpha.is_classical()}};
    meta["solve_seconds"] = solve_time.count();

    if (problem.exact) {
        const ErrorReport report = error_report(s, tensor_mesh(coords));
        if (c.format == Format::csv)
            write_file(c.out / "errors.csv", error_table_csv(report, coords));
        else
            write_file(c.out / "errors.json", error_table_json(report, coords).dump(2) + "\n");
        meta["max_abs_error"] = report.max_abs_error;
        meta["mean_abs_error"] = report.mean_abs_error;
        out << problem.name << " alpha=" << problem.alpha.value() << " n=" << s.size()
            << " max_abs_error=" << sci(report.max_abs_error) << " mean_abs_error=" << sci(report.mean_abs_error)
            << '\n';
    } else {
        write_file(c.out / "solution.csv", solution_table_csv(s, coords));
        meta["max_abs_error"] = nullptr;
        meta["mean_abs_error"] = nullptr;
        out << problem.name << " alpha=" << problem.alpha.value() << " n=" << s.size()
            << " (no exact solution; wrote solution.csv)\n";
    }
    if (c.surface) write_file(c.out / "surface.csv", surface_csv(s));

    const std::chrono::duration<double> total = std::chrono::steady_clock::now() - start;
    meta["wall_seconds"] = total.count();
    write_file(c.out / "metadata.json", meta.dump(2) + "\n");
    return ok;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    VerifyOptions options;
    options.quadrature_nodes = c.quadrature_nodes;
    options.forcing_perturbation = c.inject_forcing;
    options.duplicate_point = c.duplicate_point;

    bool all = true;
    for (const CheckResult& r : run_verification(options)) {
        all = all && r.passed;
        out << (r.passed ? "PASS " : "FAIL ") << r.name << "  value=" << sci(r.value) << " tol=" << sci(r.tolerance);
        if (!r.detail.empty()) out << "  " << r.detail;
        out << '\n';
    }
    out << (all ? "all checks passed\n" : "some checks FAILED\n");
    return all ? ok : numerical_failure;
}

int cmd_convergence(const RunConfig& c, std::ostream& out) {
    const Problem problem = build_problem(c);
    if (!problem.exact) throw ValidationError("convergence needs a problem with an exact solution");
    const std::vector<ConvergenceRow> rows =
        convergence_study(problem, c.sizes, tensor_mesh(c.mesh.coordinates()),
                          SolverOptions{.quadrature_nodes = c.quadrature_nodes, .picard_iters = c.picard_iters});

    std::ostringstream csv;
    csv << "n,p,q,max_abs_error,wall_seconds\n";
    for (const ConvergenceRow& r : rows) {
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.3f", r.wall_seconds);
        csv << r.n << ',' << r.p << ',' << r.q << ',' << sci(r.max_abs_error) << ',' << secs << '\n';
    }
    ensure_dir(c.out);
    write_file(c.out / "convergence.csv", csv.str());
    out << csv.str();
    out << (strictly_decreasing(rows) ? "error decreases monotonically\n" : "error is not monotone\n");
    return ok;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reproducing-kernel solver for the time-fractional Burgers equation", "rkburgers"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::pair<std::string, std::string>> value_flags{
        {"example", "Benchmark problem: 1 (variable coefficients) or 2 (constant coefficients)"},
        {"alpha", "Fractional order"},
        {"p", "Grid points in xi"},
        {"q", "Grid points in eta"},
        {"nodes", "Gauss-Jacobi nodes for the double Caputo transform"},
        {"picard", "Extra fixed-point sweeps after the lagged pass"},
        {"mesh", "Evaluation mesh start:step:end"},
        {"out", "Output directory"},
        {"format", "Error table format: csv or json"},
        {"sizes", "Convergence sizes, e.g. 3x3,5x5 or 9,25,49"},
        {"inject-forcing", "Verify fixture: add this constant to every forcing term"},
    };
    std::map<std::string, std::string> raw;
    std::map<std::string, bool> raw_flags{{"surface", false}, {"duplicate-point", false}};

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Key/value config file");
        for (const auto& [name, help] : value_flags) sub->add_option("--" + name, raw[name], help);
        sub->add_flag("--surface", raw_flags["surface"], "Also write a 51x51 surface CSV");
        sub->add_flag("--duplicate-point", raw_flags["duplicate-point"], "Fixture: repeat a collocation point");
    };
    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve and write error tables and metadata");
    CLI::App* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");
    CLI::App* conv_cmd = app.add_subcommand("convergence", "Error versus grid size");
    for (CLI::App* sub : {solve_cmd, verify_cmd, conv_cmd}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "rkburgers: " << e.what() << '\n';
        return validation_failure;
    }

    CLI::App* active = app.get_subcommands().front();
    return guarded(err, [&]() -> int {
        KeyValues kv;
        if (!config_path.empty()) {
            kv = read_config_file(config_path);
            kv["config"] = config_path;
        }
        for (const auto& [name, help] : value_flags)
            if (active->count("--" + name) > 0) kv[normalize_key(name)] = raw[name];
        for (const auto& [name, on] : raw_flags)
            if (on) kv[normalize_key(name)] = "true";

        const RunConfig config = make_config(kv);
        if (active == solve_cmd) return cmd_solve(config, out);
        if (active == verify_cmd) return cmd_verify(config, out);
        return cmd_convergence(config, out);
    });
}

}  // namespace rkb::cli
