#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rkb/grid.hpp"
#include "rkb/problem.hpp"

namespace rkb {

enum class ExampleId { variable_coefficients = 1, constant_coefficients = 2 };

/// D^a y + (1 + xi eta) y_xixi + xi^2 y + (xi + 1) y_xi - eta sin(xi) y y_xi = f,
/// exact y = (xi^2 - xi) eta^{1+a}, 0 < a <= 1.
Problem build_benchmark1(double alpha);

/// D^a y - y_xixi - y y_xi = f, exact y = sin(pi xi) eta^{2a}, 1/2 < a <= 1.
Problem build_benchmark2(double alpha);

Problem build_example(ExampleId id, double alpha);

/// Parses "1" / "2" (or "benchmark1" / "benchmark2").
ExampleId parse_example_id(std::string_view text);

struct ForcingReport {
    double max_discrepancy = 0.0;
    Point worst{};
    bool passed = false;
};

/// Substitutes the exact solution into the PDE (Caputo derivative of the
/// eta-power by caputo_power, xi-derivatives analytically) and compares with f.
/// Throws DomainError if the problem has no exact solution.
ForcingReport verify_forcing(const Problem& problem, const std::vector<Point>& mesh, double tol);

/// (n+1) x (n+1) uniform mesh on [0,1]^2, including the boundary.
std::vector<Point> square_mesh(int n);

// Expression catalog for user-defined problems.
//
// An expression is a sum of terms separated by ';'. A term is a product of
// whitespace separated factors:
//   <number> | pi | xi | xi^<int> | eta | eta^<real> | sin:<w> | cos:<w>
// where sin:<w> stands for sin(w xi) and <w> is a number, "pi" or "<number>pi".
// Example: "1; xi eta" is 1 + xi*eta, "-1 eta sin:1" is -eta sin(xi).
class CatalogExpression {
public:
    struct Factor {
        enum class Kind { sine, cosine } kind;
        double omega;
    };
    struct Term {
        double coef = 1.0;
        int xi_power = 0;
        double eta_power = 0.0;
        std::vector<Factor> trig;
    };

    CatalogExpression() = default;
    explicit CatalogExpression(std::vector<Term> terms) : terms_(std::move(terms)) {}

    /// Throws ValidationError on malformed input.
    static CatalogExpression parse(std::string_view text);

    double operator()(double xi, double eta) const;
    /// order-th xi-derivative (0..2) at eta = 1, i.e. of the xi-part of every term.
    double space_derivative(double xi, int order) const;
    bool depends_on_eta() const;
    const std::vector<Term>& terms() const noexcept { return terms_; }

private:
    std::vector<Term> terms_;
};

struct CatalogProblemSpec {
    std::string name = "custom";
    double alpha = 1.0;
    CatalogExpression k1;
    CatalogExpression k2;
    CatalogExpression k3;
    CatalogExpression k4;
    CatalogExpression f;
    /// X(xi) of an exact solution X(xi) eta^p, eta-free.
    std::optional<CatalogExpression> exact_space;
    double exact_time_power = 1.0;
};

Problem build_catalog_problem(const CatalogProblemSpec& spec);

}  // namespace rkb
