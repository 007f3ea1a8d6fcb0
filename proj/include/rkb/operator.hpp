#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <vector>

#include "rkb/fracmath.hpp"
#include "rkb/grid.hpp"
#include "rkb/problem.hpp"

namespace rkb {

/// Caputo derivative, in its first argument, of r -> r2(r, eta) at r = t_i:
///   1/Gamma(1-alpha) int_0^{t_i} d_r r2(r, eta) (t_i - r)^{-alpha} dr.
/// Closed form, split at r = min(eta, t_i).
double caputo_time_kernel(double eta, double t_i, FractionalOrder alpha);

/// Caputo derivative in eta, evaluated at t_j, of eta -> caputo_time_kernel(eta, t_i).
/// Symmetric in (t_i, t_j). The inner transform is closed form; the one
/// remaining non-elementary integral uses the Gauss-Jacobi rule.
double double_caputo_time_kernel(double t_i, double t_j, FractionalOrder alpha, const QuadratureRule& rule);

/// Operator coefficients k1, k2, k3 sampled at one point.
struct Coefficients {
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
};

/// psi_i = L_{(x,t)} K_{(x,t)}(xi, eta) at (x,t) = center, with the coefficients
/// frozen at the center.
struct BasisFunction {
    std::size_t index = 0;
    Point center{};
    Coefficients k{};
    FractionalOrder alpha{1.0};
    /// Test hook: drop the D^alpha term from L (both in psi and when L is applied).
    bool time_derivative = true;
};

/// psi(xi, eta) or d psi / d xi (dxi_order 0 or 1).
double psi_eval(const BasisFunction& b, double xi, double eta, int dxi_order = 0);

/// (L psi_b)(at), where L carries the coefficients `c` at the evaluation point.
double apply_operator(const BasisFunction& b, Point at, const Coefficients& c, const QuadratureRule& rule);

/// <psi_i, psi_j> = (L psi_j)(center of i).
double gram_entry(const BasisFunction& b_i, const BasisFunction& b_j, const QuadratureRule& rule);

struct GramMatrix {
    Eigen::MatrixXd entries;

    std::size_t size() const noexcept { return static_cast<std::size_t>(entries.rows()); }
};

struct OperatorOptions {
    int quadrature_nodes = kDefaultQuadratureNodes;
    bool time_derivative = true;
};

/// The basis functions of a problem on a grid, with the quadrature rule they share.
class CollocationBasis {
public:
    CollocationBasis(Problem problem, CollocationGrid grid, OperatorOptions options = {});

    const Problem& problem() const noexcept { return problem_; }
    const CollocationGrid& grid() const noexcept { return grid_; }
    const QuadratureRule& rule() const noexcept { return rule_; }
    const OperatorOptions& options() const noexcept { return options_; }
    const BasisFunction& operator[](std::size_t i) const { return functions_[i]; }
    std::size_t size() const noexcept { return functions_.size(); }

    double psi(std::size_t i, double xi, double eta, int dxi_order = 0) const;
    /// (L psi_i)(xi, eta) with the problem's coefficients at (xi, eta).
    double apply(std::size_t i, double xi, double eta) const;

    GramMatrix assemble_gram() const;

private:
    Problem problem_;
    CollocationGrid grid_;
    OperatorOptions options_;
    QuadratureRule rule_;
    std::vector<BasisFunction> functions_;
};

GramMatrix assemble_gram(const CollocationGrid& grid, const Problem& problem, OperatorOptions options = {});

}  // namespace rkb
