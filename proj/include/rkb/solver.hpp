#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <memory>
#include <vector>

#include "rkb/grid.hpp"
#include "rkb/operator.hpp"
#include "rkb/orthonormalize.hpp"
#include "rkb/problem.hpp"

namespace rkb {

struct SolverOptions {
    int quadrature_nodes = kDefaultQuadratureNodes;
    /// Extra fixed-point sweeps that re-evaluate F at the previous full
    /// solution. 0 gives the single lagged pass.
    int picard_iters = 0;
};

/// y_n = sum_i B_i psibar_i = sum_k c_k psi_k with c = beta^T B.
class ApproximateSolution {
public:
    ApproximateSolution(std::shared_ptr<const CollocationBasis> basis, OrthonormalBasis ortho, Eigen::VectorXd b,
                        Eigen::VectorXd f_values);

    std::size_t size() const noexcept { return static_cast<std::size_t>(b_.size()); }
    const Eigen::VectorXd& coefficients() const noexcept { return b_; }
    /// F(xi_k, eta_k, y_{k-1}, d_xi y_{k-1}) as used for B.
    const Eigen::VectorXd& f_values() const noexcept { return f_; }
    /// beta^T B: coefficients over the raw basis psi_k.
    const Eigen::VectorXd& expansion() const noexcept { return c_; }
    const OrthonormalBasis& orthonormal_basis() const noexcept { return ortho_; }
    const CollocationBasis& basis() const noexcept { return *basis_; }
    const Problem& problem() const noexcept { return basis_->problem(); }
    const CollocationGrid& grid() const noexcept { return basis_->grid(); }

    /// y_n or d_xi y_n at (xi, eta) in [0,1]^2.
    double evaluate(double xi, double eta, int dxi_order = 0) const;

    /// (L y_n)(xi, eta) - [f - k4 y_n d_xi y_n](xi, eta)
    double residual(double xi, double eta) const;

    /// ||y_m||^2 = c_m^T G c_m for the m-term partial sum, computed through the
    /// Gram matrix (independent of the B_i).
    double norm_squared(std::size_t m) const;

private:
    std::shared_ptr<const CollocationBasis> basis_;
    OrthonormalBasis ortho_;
    Eigen::VectorXd b_;
    Eigen::VectorXd f_;
    Eigen::VectorXd c_;
};

/// Runs the sequential scheme
///   F_k = f(P_k) - k4(P_k) y_{k-1}(P_k) d_xi y_{k-1}(P_k),  B_i = sum_{k<=i} beta_ik F_k,
/// starting from y_0 = 0.
ApproximateSolution solve(const Problem& problem, const CollocationGrid& grid, const SolverOptions& options = {});

double evaluate(const ApproximateSolution& s, double xi, double eta, int dxi_order = 0);
double residual(const ApproximateSolution& s, double xi, double eta);

struct ErrorRow {
    Point point;
    double approx;
    double exact;
    double abs_error;
};

struct ErrorReport {
    std::vector<ErrorRow> rows;
    double max_abs_error = 0.0;
    double mean_abs_error = 0.0;
};

/// Throws DomainError if the problem has no exact solution.
ErrorReport error_report(const ApproximateSolution& s, const std::vector<Point>& eval_points);

/// Tensor mesh {v} x {v} from a list of coordinates (rows xi, columns eta).
std::vector<Point> tensor_mesh(const std::vector<double>& coords);

/// {0.1, ..., 0.6}, the standard error-table mesh.
std::vector<double> table_coordinates();

struct GridSize {
    int p;
    int q;
};

struct ConvergenceRow {
    int p;
    int q;
    std::size_t n;
    double max_abs_error;
    double wall_seconds;
};

std::vector<ConvergenceRow> convergence_study(const Problem& problem, const std::vector<GridSize>& sizes,
                                              const std::vector<Point>& eval_mesh,
                                              const SolverOptions& options = {});

/// True if max_abs_error strictly decreases from each row to the next.
bool strictly_decreasing(const std::vector<ConvergenceRow>& rows);

}  // namespace rkb
