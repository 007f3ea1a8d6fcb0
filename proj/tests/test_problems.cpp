#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "rkb/error.hpp"
#include "rkb/problems.hpp"

using namespace rkb;

TEST(Benchmark1, ExactSolutionAndForcing) {
    const Problem p = build_benchmark1(0.9);
    ASSERT_TRUE(p.exact.has_value());
    EXPECT_NEAR((*p.exact)(0.5, 0.5), -0.25 * std::pow(0.5, 1.9), 1e-16);
    EXPECT_NEAR((*p.exact)(0.5, 0.5), -0.0669858, 1e-7);
    for (double xi : {0.0, 0.3, 1.0}) EXPECT_EQ((*p.exact)(xi, 0.0), 0.0);
    for (double eta : {0.2, 0.7}) EXPECT_NEAR(p.f(0.0, eta), std::pow(eta, 1.9), 1e-15);
    EXPECT_DOUBLE_EQ(p.k1(0.5, 0.4), 1.2);
    EXPECT_DOUBLE_EQ(p.k4(0.5, 0.4), -0.4 * std::sin(0.5));
}

TEST(Benchmark2, ExactSolutionAndRange) {
    const Problem p = build_benchmark2(0.8);
    EXPECT_NEAR((*p.exact)(0.5, 1.0), 1.0, 1e-16);
    for (double eta : {0.1, 0.5, 1.0}) {
        EXPECT_EQ((*p.exact)(0.0, eta), 0.0);
        EXPECT_EQ((*p.exact)(1.0, eta), 0.0);
    }
    EXPECT_THROW(build_benchmark2(0.5), DomainError);
    EXPECT_THROW(build_benchmark2(0.3), DomainError);
    EXPECT_NO_THROW(build_benchmark2(1.0));
    EXPECT_THROW(build_benchmark1(1.2), DomainError);
}

TEST(Benchmark2, TimeFactorCaputoDerivative) {
    // D^a eta^{2a} = Gamma(2a+1)/Gamma(a+1) eta^a; at a = 0.8, eta = 1 this is Gamma(2.6)/Gamma(1.8).
    EXPECT_NEAR(caputo_power(1.6, FractionalOrder(0.8), 1.0), 1.53494682149731, 1e-13);
    EXPECT_NEAR(caputo_power(1.6, FractionalOrder(0.8), 1.0), std::tgamma(2.6) / std::tgamma(1.8), 1e-13);
}

TEST(VerifyForcing, BothExamplesConsistent) {
    for (double a : {0.7, 0.8, 0.9, 1.0}) {
        EXPECT_LE(verify_forcing(build_benchmark1(a), square_mesh(10), 1e-10).max_discrepancy, 1e-10) << a;
        EXPECT_LE(verify_forcing(build_benchmark2(a), square_mesh(10), 1e-10).max_discrepancy, 1e-10) << a;
    }
}

TEST(VerifyForcing, IndependentFiniteDifferenceCheck) {
    // Residual of the PDE with the Caputo derivative by quadrature of the
    // definition and xi-derivatives by differences.
    for (double a : {0.7, 0.9}) {
        for (const Problem& p : {build_benchmark1(a), build_benchmark2(a)}) {
            const auto& y = *p.exact;
            for (double xi : {0.25, 0.6})
                for (double eta : {0.3, 0.9}) {
                    auto dy_deta = [&](double s) { return y.space(xi, 0) * y.time_power * std::pow(s, y.time_power - 1); };
                    const double caputo =
                        testing_oracle::weighted_integral(dy_deta, 0.0, eta, eta, a) / std::tgamma(1.0 - a);
                    auto yy = [&](double x) { return y(x, eta); };
                    const double h = 1e-4;
                    const double yxx = (yy(xi + h) - 2 * yy(xi) + yy(xi - h)) / (h * h);
                    const double yx = testing_oracle::central_difference(yy, xi);
                    const double lhs = caputo + p.k1(xi, eta) * yxx + p.k2(xi, eta) * yy(xi) + p.k3(xi, eta) * yx +
                                       p.k4(xi, eta) * yy(xi) * yx;
                    EXPECT_NEAR(lhs, p.f(xi, eta), 1e-6) << p.name << ' ' << a << ' ' << xi << ' ' << eta;
                }
        }
    }
}

TEST(VerifyForcing, DetectsPerturbation) {
    Problem p = build_benchmark1(0.9);
    p.f = [f = p.f](double xi, double eta) { return f(xi, eta) + 1e-3; };
    const ForcingReport r = verify_forcing(p, square_mesh(10), 1e-10);
    EXPECT_FALSE(r.passed);
    EXPECT_NEAR(r.max_discrepancy, 1e-3, 1e-12);
}

TEST(VerifyForcing, NeedsExactSolution) {
    Problem p = build_benchmark1(0.9);
    p.exact.reset();
    EXPECT_THROW(verify_forcing(p, square_mesh(2), 1e-10), DomainError);
}

TEST(ExampleIds, Parse) {
    EXPECT_EQ(parse_example_id("1"), ExampleId::variable_coefficients);
    EXPECT_EQ(parse_example_id("benchmark2"), ExampleId::constant_coefficients);
    EXPECT_THROW(parse_example_id("3"), ValidationError);
}

TEST(CheckProblem, BoundaryViolationRejected) {
    Problem p = build_benchmark1(0.9);
    p.exact->space = [](double xi, int order) { return order == 0 ? xi : (order == 1 ? 1.0 : 0.0); };
    EXPECT_THROW(check_problem(p), DomainError);
}

TEST(Catalog, ParsesTermsAndDerivatives) {
    const CatalogExpression e = CatalogExpression::parse("2 xi^2 eta; -1 sin:pi; 0.5 cos:2pi eta^0.5");
    const double pi = std::numbers::pi;
    const double xi = 0.3, eta = 0.64;
    EXPECT_NEAR(e(xi, eta), 2 * xi * xi * eta - std::sin(pi * xi) + 0.5 * std::cos(2 * pi * xi) * 0.8, 1e-15);
    EXPECT_NEAR(e.space_derivative(xi, 1), 4 * xi - pi * std::cos(pi * xi) - pi * std::sin(2 * pi * xi), 1e-13);
    EXPECT_NEAR(e.space_derivative(xi, 2), 4 + pi * pi * std::sin(pi * xi) - 2 * pi * pi * std::cos(2 * pi * xi), 1e-12);
    EXPECT_TRUE(e.depends_on_eta());
    EXPECT_FALSE(CatalogExpression::parse("xi xi sin:1").depends_on_eta());
    EXPECT_TRUE(CatalogExpression::parse("").terms().empty());
    EXPECT_THROW(CatalogExpression::parse("xi^1.5"), ValidationError);
    EXPECT_THROW(CatalogExpression::parse("foo"), ValidationError);
}

TEST(Catalog, RebuildsBenchmark1) {
    // Benchmark 1 with alpha = 1, where the forcing terms are all catalog atoms.
    CatalogProblemSpec spec;
    spec.alpha = 1.0;
    spec.k1 = CatalogExpression::parse("1; xi eta");
    spec.k2 = CatalogExpression::parse("xi^2");
    spec.k3 = CatalogExpression::parse("xi; 1");
    spec.k4 = CatalogExpression::parse("-1 eta sin:1");
    spec.exact_space = CatalogExpression::parse("xi^2; -1 xi");
    spec.exact_time_power = 2.0;
    spec.f = CatalogExpression::parse("2 xi^2 eta; -2 xi eta; 2 eta^2; 2 xi eta^3; xi^4 eta^2; -1 xi^3 eta^2;"
                                      "2 xi^2 eta^2; xi eta^2; -1 eta^2");
    // The nonlinear term is not a catalog atom, so drop it for this check.
    spec.k4 = CatalogExpression::parse("0");
    const Problem p = build_catalog_problem(spec);
    EXPECT_LE(verify_forcing(p, square_mesh(10), 1e-12).max_discrepancy, 1e-12);
    const Problem ref = build_benchmark1(1.0);
    EXPECT_NEAR((*p.exact)(0.3, 0.7), (*ref.exact)(0.3, 0.7), 1e-15);
}

TEST(Catalog, RejectsEtaDependentExactSpace) {
    CatalogProblemSpec spec;
    spec.alpha = 0.5;
    spec.f = CatalogExpression::parse("1");
    spec.exact_space = CatalogExpression::parse("xi eta");
    EXPECT_THROW(build_catalog_problem(spec), ValidationError);
}
