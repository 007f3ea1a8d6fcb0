#include "rkb/problems.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>

#include "rkb/error.hpp"

namespace rkb {
namespace {

constexpr double kPi = std::numbers::pi;

// sin(pi x), exactly zero at integers.
double sin_pi(double x) {
    const double k = std::round(x);
    const double s = std::sin(kPi * (x - k));
    return (static_cast<long long>(k) % 2 == 0) ? s : -s;
}

double cos_pi(double x) {
    const double k = std::round(x);
    const double c = std::cos(kPi * (x - k));
    return (static_cast<long long>(k) % 2 == 0) ? c : -c;
}

// Value and first two derivatives of a univariate function.
struct Jet {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;

    Jet operator*(const Jet& o) const {
        return {v * o.v, d1 * o.v + v * o.d1, d2 * o.v + 2.0 * d1 * o.d1 + v * o.d2};
    }
    double get(int order) const { return order == 0 ? v : (order == 1 ? d1 : d2); }
};

Jet power_jet(double x, int a) {
    Jet j;
    j.v = std::pow(x, a);
    j.d1 = a > 0 ? a * std::pow(x, a - 1) : 0.0;
    j.d2 = a > 1 ? a * (a - 1) * std::pow(x, a - 2) : 0.0;
    return j;
}

Jet trig_jet(const CatalogExpression::Factor& f, double x) {
    const double w = f.omega;
    const double s = std::sin(w * x);
    const double c = std::cos(w * x);
    if (f.kind == CatalogExpression::Factor::Kind::sine) return {s, w * c, -w * w * s};
    return {c, -w * s, -w * w * c};
}

Jet term_space_jet(const CatalogExpression::Term& t, double xi) {
    Jet j{t.coef, 0.0, 0.0};
    j = j * power_jet(xi, t.xi_power);
    for (const auto& f : t.trig) j = j * trig_jet(f, xi);
    return j;
}

double parse_number(std::string_view token, std::string_view context) {
    // "<number>", "pi" or "<number>pi"
    std::string s(token);
    double scale = 1.0;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        scale = kPi;
        s.resize(s.size() - 2);
        if (s.empty()) return scale;
        if (s == "-") return -scale;
    }
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw ValidationError("cannot parse number '" + std::string(token) + "' in '" + std::string(context) + "'");
    }
    return v * scale;
}

}  // namespace

Problem build_benchmark1(double alpha) {
    const FractionalOrder order(alpha);
    // pi / (sin(pi a) Gamma(-1-a)) = Gamma(2+a) by the reflection formula.
    const double g = gamma(2.0 + alpha);
    const double p = 1.0 + alpha;

    return Problem{
        .name = "benchmark1",
        .alpha = order,
        .k1 = [](double xi, double eta) { return 1.0 + xi * eta; },
        .k2 = [](double xi, double) { return xi * xi; },
        .k3 = [](double xi, double) { return xi + 1.0; },
        .k4 = [](double xi, double eta) { return -eta * std::sin(xi); },
        .f =
            [g, p](double xi, double eta) {
                const double x2 = xi * xi - xi;
                const double ep = std::pow(eta, p);
                return x2 * eta * g + 2.0 * (eta * xi + 1.0) * ep + (xi * xi * xi * xi - xi * xi * xi) * ep +
                       (1.0 + xi) * (2.0 * xi - 1.0) * ep -
                       eta * std::sin(xi) * x2 * std::pow(eta, 2.0 * p) * (2.0 * xi - 1.0);
            },
        .exact =
            SeparableSolution{
                .space =
                    [](double xi, int order) {
                        if (order == 0) return xi * xi - xi;
                        if (order == 1) return 2.0 * xi - 1.0;
                        return 2.0;
                    },
                .time_power = p,
            },
    };
}

Problem build_benchmark2(double alpha) {
    const FractionalOrder order(alpha);
    if (!(alpha > 0.5)) throw DomainError("benchmark2 requires 1/2 < alpha <= 1");
    // Gamma(2a+1)/Gamma(a+1) written through the duplication formula.
    const double lead = std::pow(4.0, alpha) * gamma(alpha + 0.5) / std::sqrt(kPi);

    return Problem{
        .name = "benchmark2",
        .alpha = order,
        .k1 = [](double, double) { return -1.0; },
        .k2 = [](double, double) { return 0.0; },
        .k3 = [](double, double) { return 0.0; },
        .k4 = [](double, double) { return -1.0; },
        .f =
            [lead, alpha](double xi, double eta) {
                const double s = sin_pi(xi);
                return lead * std::pow(eta, alpha) * s + s * kPi * kPi * std::pow(eta, 2.0 * alpha) -
                       s * std::pow(eta, 4.0 * alpha) * cos_pi(xi) * kPi;
            },
        .exact =
            SeparableSolution{
                .space =
                    [](double xi, int order) {
                        if (order == 0) return sin_pi(xi);
                        if (order == 1) return kPi * cos_pi(xi);
                        return -kPi * kPi * sin_pi(xi);
                    },
                .time_power = 2.0 * alpha,
            },
    };
}

Problem build_example(ExampleId id, double alpha) {
    switch (id) {
        case ExampleId::variable_coefficients:
            return build_benchmark1(alpha);
        case ExampleId::constant_coefficients:
            return build_benchmark2(alpha);
    }
    throw ValidationError("unknown example id");
}

ExampleId parse_example_id(std::string_view text) {
    if (text == "1" || text == "benchmark1") return ExampleId::variable_coefficients;
    if (text == "2" || text == "benchmark2") return ExampleId::constant_coefficients;
    throw ValidationError("unknown example '" + std::string(text) + "' (expected 1 or 2)");
}

ForcingReport verify_forcing(const Problem& problem, const std::vector<Point>& mesh, double tol) {
    if (!problem.exact) throw DomainError(problem.name + ": verify_forcing needs an exact solution");
    const SeparableSolution& y = *problem.exact;

    ForcingReport report;
    for (const Point& pt : mesh) {
        const double xi = pt.xi;
        const double eta = pt.eta;
        const double tp = std::pow(eta, y.time_power);
        const double x0 = y.space(xi, 0);
        const double x1 = y.space(xi, 1);
        const double x2 = y.space(xi, 2);
        const double lhs = x0 * caputo_power(y.time_power, problem.alpha, eta) + problem.k1(xi, eta) * x2 * tp +
                           problem.k2(xi, eta) * x0 * tp + problem.k3(xi, eta) * x1 * tp +
                           problem.k4(xi, eta) * x0 * x1 * tp * tp;
        const double d = std::abs(lhs - problem.f(xi, eta));
        if (!(d <= report.max_discrepancy)) {
            report.max_discrepancy = d;
            report.worst = pt;
        }
    }
    report.passed = report.max_discrepancy <= tol;
    return report;
}

std::vector<Point> square_mesh(int n) {
    std::vector<Point> mesh;
    mesh.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b) mesh.push_back({static_cast<double>(a) / n, static_cast<double>(b) / n});
    return mesh;
}

CatalogExpression CatalogExpression::parse(std::string_view text) {
    std::vector<Term> terms;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t stop = text.find(';', start);
        if (stop == std::string_view::npos) stop = text.size();
        const std::string_view chunk = text.substr(start, stop - start);
        start = stop + 1;

        std::istringstream tokens{std::string(chunk)};
        std::string tok;
        Term term;
        bool any = false;
        while (tokens >> tok) {
            any = true;
            if (tok == "xi") {
                term.xi_power += 1;
            } else if (tok.rfind("xi^", 0) == 0) {
                const double e = parse_number(tok.substr(3), text);
                if (e < 0.0 || e != std::floor(e)) throw ValidationError("xi powers must be non-negative integers");
                term.xi_power += static_cast<int>(e);
            } else if (tok == "eta") {
                term.eta_power += 1.0;
            } else if (tok.rfind("eta^", 0) == 0) {
                const double e = parse_number(tok.substr(4), text);
                if (e < 0.0) throw ValidationError("eta powers must be non-negative");
                term.eta_power += e;
            } else if (tok.rfind("sin:", 0) == 0) {
                term.trig.push_back({Factor::Kind::sine, parse_number(tok.substr(4), text)});
            } else if (tok.rfind("cos:", 0) == 0) {
                term.trig.push_back({Factor::Kind::cosine, parse_number(tok.substr(4), text)});
            } else {
                term.coef *= parse_number(tok, text);
            }
        }
        if (any) terms.push_back(std::move(term));
        if (stop == text.size()) break;
    }
    return CatalogExpression(std::move(terms));
}

double CatalogExpression::operator()(double xi, double eta) const {
    double acc = 0.0;
    for (const Term& t : terms_) acc += term_space_jet(t, xi).v * std::pow(eta, t.eta_power);
    return acc;
}

double CatalogExpression::space_derivative(double xi, int order) const {
    if (order < 0 || order > 2) throw DomainError("space_derivative: order must be 0..2");
    double acc = 0.0;
    for (const Term& t : terms_) acc += term_space_jet(t, xi).get(order);
    return acc;
}

bool CatalogExpression::depends_on_eta() const {
    for (const Term& t : terms_)
        if (t.eta_power != 0.0) return true;
    return false;
}

Problem build_catalog_problem(const CatalogProblemSpec& spec) {
    auto field = [](CatalogExpression e) -> Field { return [e = std::move(e)](double xi, double eta) { return e(xi, eta); }; };

    Problem prob{
        .name = spec.name,
        .alpha = FractionalOrder(spec.alpha),
        .k1 = field(spec.k1),
        .k2 = field(spec.k2),
        .k3 = field(spec.k3),
        .k4 = field(spec.k4),
        .f = field(spec.f),
        .exact = std::nullopt,
    };
    if (spec.exact_space) {
        if (spec.exact_space->depends_on_eta()) throw ValidationError("exact_space must not depend on eta");
        if (!(spec.exact_time_power > 0.0)) throw ValidationError("exact_time_power must be positive");
        prob.exact = SeparableSolution{
            .space = [e = *spec.exact_space](double xi, int order) { return e.space_derivative(xi, order); },
            .time_power = spec.exact_time_power,
        };
    }
    return prob;
}

}  // namespace rkb
