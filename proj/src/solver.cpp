#include "rkb/solver.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "rkb/error.hpp"

namespace rkb {

ApproximateSolution::ApproximateSolution(std::shared_ptr<const CollocationBasis> basis, OrthonormalBasis ortho,
                                         Eigen::VectorXd b, Eigen::VectorXd f_values)
    : basis_(std::move(basis)), ortho_(std::move(ortho)), b_(std::move(b)), f_(std::move(f_values)) {
    c_ = ortho_.beta.transpose() * b_;
}

double ApproximateSolution::evaluate(double xi, double eta, int dxi_order) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < basis_->size(); ++k) {
        acc += c_(static_cast<Eigen::Index>(k)) * basis_->psi(k, xi, eta, dxi_order);
    }
    return acc;
}

double ApproximateSolution::residual(double xi, double eta) const {
    double l_y = 0.0;
    for (std::size_t k = 0; k < basis_->size(); ++k) {
        l_y += c_(static_cast<Eigen::Index>(k)) * basis_->apply(k, xi, eta);
    }
    const Problem& p = problem();
    const double y = evaluate(xi, eta, 0);
    const double dy = evaluate(xi, eta, 1);
    return l_y - (p.f(xi, eta) - p.k4(xi, eta) * y * dy);
}

double ApproximateSolution::norm_squared(std::size_t m) const {
    if (m > size()) throw DomainError("norm_squared: prefix longer than the expansion");
    const auto mm = static_cast<Eigen::Index>(m);
    using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    const Vec c = ortho_.beta.topLeftCorner(mm, mm).transpose().cast<long double>() * b_.head(mm).cast<long double>();
    return static_cast<double>(c.dot(ortho_.gram.entries.topLeftCorner(mm, mm).cast<long double>() * c));
}

ApproximateSolution solve(const Problem& problem, const CollocationGrid& grid, const SolverOptions& options) {
    if (grid.size() == 0) throw DomainError("solve: empty collocation grid");
    if (options.picard_iters < 0) throw DomainError("solve: picard_iters must be non-negative");

    auto basis = std::make_shared<const CollocationBasis>(problem, grid,
                                                          OperatorOptions{.quadrature_nodes = options.quadrature_nodes});
    OrthonormalBasis ortho = compute_beta(basis->assemble_gram());

    const auto n = static_cast<Eigen::Index>(grid.size());
    const Eigen::MatrixXd& beta = ortho.beta;

    // psi_m and d_xi psi_m at every collocation point, row = point.
    Eigen::MatrixXd psi(n, n);
    Eigen::MatrixXd dpsi(n, n);
    Eigen::VectorXd f(n);
    Eigen::VectorXd k4(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Point& pt = grid[static_cast<std::size_t>(k)];
        for (Eigen::Index m = 0; m < n; ++m) {
            psi(k, m) = basis->psi(static_cast<std::size_t>(m), pt.xi, pt.eta, 0);
            dpsi(k, m) = basis->psi(static_cast<std::size_t>(m), pt.xi, pt.eta, 1);
        }
        f(k) = problem.f(pt.xi, pt.eta);
        k4(k) = problem.k4(pt.xi, pt.eta);
    }

    auto check_finite = [](double v, Eigen::Index k) {
        if (!std::isfinite(v)) throw NumericalError("solve: F is not finite at collocation point " + std::to_string(k));
    };

    Eigen::VectorXd big_f = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);  // beta^T B of the running partial sum
    for (Eigen::Index k = 0; k < n; ++k) {
        const double y = psi.row(k).dot(c);
        const double dy = dpsi.row(k).dot(c);
        big_f(k) = f(k) - k4(k) * y * dy;
        check_finite(big_f(k), k);
        b(k) = beta.row(k).head(k + 1).dot(big_f.head(k + 1));
        c.head(k + 1) += b(k) * beta.row(k).head(k + 1).transpose();
    }

    for (int sweep = 0; sweep < options.picard_iters; ++sweep) {
        const Eigen::VectorXd y = psi * c;
        const Eigen::VectorXd dy = dpsi * c;
        big_f = f - k4.cwiseProduct(y).cwiseProduct(dy);
        for (Eigen::Index k = 0; k < n; ++k) check_finite(big_f(k), k);
        b = beta.triangularView<Eigen::Lower>() * big_f;
        c = beta.transpose() * b;
    }

    return ApproximateSolution(std::move(basis), std::move(ortho), std::move(b), std::move(big_f));
}

double evaluate(const ApproximateSolution& s, double xi, double eta, int dxi_order) {
    return s.evaluate(xi, eta, dxi_order);
}

double residual(const ApproximateSolution& s, double xi, double eta) { return s.residual(xi, eta); }

ErrorReport error_report(const ApproximateSolution& s, const std::vector<Point>& eval_points) {
    const Problem& p = s.problem();
    if (!p.exact) throw DomainError(p.name + ": error report needs an exact solution");

    ErrorReport report;
    report.rows.reserve(eval_points.size());
    double sum = 0.0;
    for (const Point& pt : eval_points) {
        const double approx = s.evaluate(pt.xi, pt.eta);
        const double exact = (*p.exact)(pt.xi, pt.eta);
        const double err = std::abs(approx - exact);
        report.rows.push_back({pt, approx, exact, err});
        report.max_abs_error = std::max(report.max_abs_error, err);
        sum += err;
    }
    if (!report.rows.empty()) report.mean_abs_error = sum / static_cast<double>(report.rows.size());
    return report;
}

std::vector<Point> tensor_mesh(const std::vector<double>& coords) {
    std::vector<Point> mesh;
    mesh.reserve(coords.size() * coords.size());
    for (double xi : coords)
        for (double eta : coords) mesh.push_back({xi, eta});
    return mesh;
}

std::vector<double> table_coordinates() { return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}; }

std::vector<ConvergenceRow> convergence_study(const Problem& problem, const std::vector<GridSize>& sizes,
                                              const std::vector<Point>& eval_mesh, const SolverOptions& options) {
    std::vector<ConvergenceRow> rows;
    rows.reserve(sizes.size());
    for (const GridSize& size : sizes) {
        const auto start = std::chrono::steady_clock::now();
        const ApproximateSolution s = solve(problem, CollocationGrid::uniform(size.p, size.q), options);
        const ErrorReport report = error_report(s, eval_mesh);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        rows.push_back({size.p, size.q, s.size(), report.max_abs_error, elapsed.count()});
    }
    return rows;
}

bool strictly_decreasing(const std::vector<ConvergenceRow>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].max_abs_error < rows[i - 1].max_abs_error)) return false;
    return true;
}

}  // namespace rkb
