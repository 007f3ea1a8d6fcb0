#include <gtest/gtest.h>

#include <cmath>

#include "rkb/error.hpp"
#include "rkb/problems.hpp"
#include "rkb/solver.hpp"
#include "test_helpers.hpp"

using namespace rkb;

TEST(Solve, ZeroDataGivesZeroSolution) {
    const ApproximateSolution s = solve(constant_problem(0.7, 1.0, 0.5, 0.2, 1.0), CollocationGrid::uniform(3, 3));
    EXPECT_EQ(s.coefficients(), Eigen::VectorXd::Zero(9));
    EXPECT_EQ(s.f_values(), Eigen::VectorXd::Zero(9));
    EXPECT_EQ(s.evaluate(0.4, 0.6), 0.0);
    EXPECT_EQ(s.residual(0.4, 0.6), 0.0);
}

TEST(Solve, LinearCollocationExactness) {
    Problem p = build_benchmark1(0.9);
    p.k4 = [](double, double) { return 0.0; };
    const CollocationGrid grid = CollocationGrid::uniform(5, 5);
    const ApproximateSolution s = solve(p, grid);
    double max_f = 0.0;
    for (const Point& pt : grid.points()) max_f = std::max(max_f, std::abs(p.f(pt.xi, pt.eta)));
    for (const Point& pt : grid.points()) EXPECT_LE(std::abs(s.residual(pt.xi, pt.eta)), 1e-7 * (1.0 + max_f));
}

TEST(Solve, LagDefectAtCollocationPoints) {
    const Problem p = build_benchmark1(0.8);
    const CollocationGrid grid = CollocationGrid::uniform(4, 4);
    const ApproximateSolution s = solve(p, grid);
    // Partial sums y_{k-1} are rebuilt from the expansion of the leading k-1 coefficients.
    const Eigen::MatrixXd& beta = s.orthonormal_basis().beta;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Point pt = grid[k];
        const auto kk = static_cast<Eigen::Index>(k);
        Eigen::VectorXd c = Eigen::VectorXd::Zero(beta.rows());
        if (kk > 0) c.head(kk) = beta.topLeftCorner(kk, kk).transpose() * s.coefficients().head(kk);
        double y_prev = 0.0, dy_prev = 0.0;
        for (Eigen::Index m = 0; m < kk; ++m) {
            y_prev += c(m) * s.basis().psi(static_cast<std::size_t>(m), pt.xi, pt.eta);
            dy_prev += c(m) * s.basis().psi(static_cast<std::size_t>(m), pt.xi, pt.eta, 1);
        }
        const double y = s.evaluate(pt.xi, pt.eta), dy = s.evaluate(pt.xi, pt.eta, 1);
        const double expected = p.k4(pt.xi, pt.eta) * (y * dy - y_prev * dy_prev);
        EXPECT_NEAR(s.residual(pt.xi, pt.eta), expected, 1e-7) << k;
    }
}

TEST(Solve, NormRecursion) {
    const ApproximateSolution s = solve(build_benchmark2(0.9), CollocationGrid::uniform(6, 6));
    double partial = 0.0;
    double previous = 0.0;
    for (std::size_t m = 1; m <= s.size(); ++m) {
        const double b = s.coefficients()(static_cast<Eigen::Index>(m - 1));
        partial += b * b;
        const double norm2 = s.norm_squared(m);
        EXPECT_NEAR(norm2, partial, 1e-8 * (1.0 + partial)) << m;
        EXPECT_GE(norm2, previous - 1e-12);
        previous = norm2;
    }
    EXPECT_THROW(s.norm_squared(s.size() + 1), DomainError);
}

TEST(Solve, BoundaryAnnihilation) {
    const ApproximateSolution s = solve(build_benchmark1(0.7), CollocationGrid::uniform(4, 4));
    for (double v : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        EXPECT_EQ(s.evaluate(v, 0.0), 0.0);
        EXPECT_EQ(s.evaluate(0.0, v), 0.0);
        EXPECT_EQ(s.evaluate(1.0, v), 0.0);
    }
    EXPECT_EQ(evaluate(s, 0.0, 0.7), 0.0);
}

TEST(Solve, Deterministic) {
    const ApproximateSolution a = solve(build_benchmark1(0.9), CollocationGrid::uniform(5, 5));
    const ApproximateSolution b = solve(build_benchmark1(0.9), CollocationGrid::uniform(5, 5));
    EXPECT_EQ(a.coefficients(), b.coefficients());
}

TEST(Solve, OptionsValidation) {
    EXPECT_THROW(solve(build_benchmark1(0.9), CollocationGrid::uniform(2, 2), SolverOptions{.picard_iters = -1}),
                 DomainError);
    EXPECT_THROW(solve(build_benchmark1(0.9), CollocationGrid::uniform(2, 2), SolverOptions{.quadrature_nodes = 0}),
                 DomainError);
}

TEST(Solve, DuplicatePointPropagatesFactorizationFailure) {
    std::vector<Point> pts = CollocationGrid::uniform(2, 2).points();
    pts.push_back(pts[1]);
    EXPECT_THROW(solve(build_benchmark1(0.9), CollocationGrid::from_points(pts)), NotPositiveDefinite);
}

TEST(Solve, NonFiniteForcingReportsIndex) {
    Problem p = build_benchmark1(0.9);
    // Finite on the validation mesh, infinite at the collocation point (1/3, 1/3).
    p.f = [](double xi, double eta) { return (xi == 1.0 / 3.0 && eta == 1.0 / 3.0) ? INFINITY : 0.0; };
    try {
        solve(p, CollocationGrid::uniform(3, 3));
        FAIL() << "expected NumericalError";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("point 0"), std::string::npos) << e.what();
    }
}

TEST(Solve, Benchmark1MatchesReferenceCorner) {
    const ApproximateSolution s = solve(build_benchmark1(0.9), CollocationGrid::uniform(5, 5));
    const ErrorReport r = error_report(s, tensor_mesh({0.1}));
    EXPECT_LE(r.max_abs_error, 2.39e-3);
}

TEST(Solve, Benchmark2AtUnitTime) {
    const ApproximateSolution s = solve(build_benchmark2(0.9), CollocationGrid::uniform(10, 10));
    EXPECT_NEAR(s.evaluate(0.5, 1.0), 1.0, 0.0767);
}

TEST(Solve, PicardSweepsKeepAccuracy) {
    const Problem p = build_benchmark1(0.9);
    const std::vector<Point> mesh = tensor_mesh(table_coordinates());
    const double lagged = error_report(solve(p, CollocationGrid::uniform(5, 5)), mesh).max_abs_error;
    const double swept =
        error_report(solve(p, CollocationGrid::uniform(5, 5), SolverOptions{.picard_iters = 3}), mesh).max_abs_error;
    EXPECT_LT(swept, 2.0 * lagged);
}

TEST(ErrorReport, NeedsExactSolution) {
    const ApproximateSolution s = solve(constant_problem(0.5, 1, 0, 0), CollocationGrid::uniform(2, 2));
    EXPECT_THROW(error_report(s, tensor_mesh({0.5})), DomainError);
}

TEST(ErrorReport, MeshLayoutAndStatistics) {
    const ApproximateSolution s = solve(build_benchmark1(0.9), CollocationGrid::uniform(3, 3));
    const std::vector<double> coords{0.2, 0.4};
    const ErrorReport r = error_report(s, tensor_mesh(coords));
    ASSERT_EQ(r.rows.size(), 4u);
    EXPECT_EQ(r.rows[1].point.xi, 0.2);
    EXPECT_EQ(r.rows[1].point.eta, 0.4);
    double sum = 0.0, mx = 0.0;
    for (const ErrorRow& row : r.rows) {
        EXPECT_DOUBLE_EQ(row.abs_error, std::abs(row.approx - row.exact));
        sum += row.abs_error;
        mx = std::max(mx, row.abs_error);
    }
    EXPECT_DOUBLE_EQ(r.max_abs_error, mx);
    EXPECT_DOUBLE_EQ(r.mean_abs_error, sum / 4);
}

TEST(Convergence, ErrorDecreasesWithGridSize) {
    const auto rows = convergence_study(build_benchmark1(0.9), {{3, 3}, {5, 5}, {7, 7}}, tensor_mesh(table_coordinates()));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[2].n, 49u);
    EXPECT_LT(rows[2].max_abs_error, rows[0].max_abs_error);
    EXPECT_TRUE(strictly_decreasing(rows));
    EXPECT_TRUE(convergence_study(build_benchmark1(0.9), {}, tensor_mesh({0.5})).empty());
    EXPECT_EQ(convergence_study(build_benchmark1(0.9), {{2, 2}}, tensor_mesh({0.5})).size(), 1u);
}
