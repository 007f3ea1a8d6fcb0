#include "rkb/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rkb/error.hpp"
#include "rkb/kernels.hpp"

namespace rkb {
namespace {

void check_unit(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainError(std::string(what) + ": argument outside [0,1]: " + std::to_string(v));
    }
}

// Sum_a k_a d^a_x d^d_xi r3(x, xi) for the operator part k1 d_xx + k2 + k3 d_x.
double space_operator(const Coefficients& k, double x, double xi, int dxi_order) {
    return k.k1 * r3(x, xi, 2, dxi_order) + k.k2 * r3(x, xi, 0, dxi_order) + k.k3 * r3(x, xi, 1, dxi_order);
}

}  // namespace

double caputo_time_kernel(double eta, double t_i, FractionalOrder alpha) {
    check_unit(eta, "caputo_time_kernel");
    check_unit(t_i, "caputo_time_kernel");
    if (alpha.is_classical()) return r2(t_i, eta, 1, 0);
    if (t_i == 0.0) return 0.0;

    const double a = alpha.value();
    // d_r r2(r, eta) = eta + eta r - r^2/2 for r < eta, eta + eta^2/2 for r >= eta.
    const double split = std::min(eta, t_i);
    double value = 0.0;
    if (split > 0.0) {
        value += eta * weighted_moment(0, a, 0.0, split, t_i) + eta * weighted_moment(1, a, 0.0, split, t_i) -
                 0.5 * weighted_moment(2, a, 0.0, split, t_i);
    }
    if (eta < t_i) {
        value += (eta + 0.5 * eta * eta) * std::pow(t_i - eta, 1.0 - a) / (1.0 - a);
    }
    return value / gamma(1.0 - a);
}

double double_caputo_time_kernel(double t_i, double t_j, FractionalOrder alpha, const QuadratureRule& rule) {
    check_unit(t_i, "double_caputo_time_kernel");
    check_unit(t_j, "double_caputo_time_kernel");
    // d_r d_eta r2(r, eta) = 1 + min(r, eta)
    if (alpha.is_classical()) return r2(t_i, t_j, 1, 1);

    // The transform equals
    //   1/Gamma(1-a)^2 int_0^{t_i} int_0^{t_j} (1 + min(r,s)) (t_i-r)^{-a} (t_j-s)^{-a} ds dr,
    // which is symmetric, so take the outer integral over the shorter range.
    const double hi = std::max(t_i, t_j);
    const double lo = std::min(t_i, t_j);
    if (lo == 0.0) return 0.0;

    const double a = alpha.value();
    if (rule.size() == 0 || rule.alpha != a) {
        throw DomainError("double_caputo_time_kernel: quadrature rule does not match alpha");
    }
    const double e1 = 1.0 - a;
    const double e2 = 2.0 - a;

    // Inner transform, as a function of eta <= hi:
    //   Gamma(1-a) d_eta T(eta) = hi^{e1}/e1 + (hi^{e2} - (hi-eta)^{e2}) / (e1 e2)
    const double constant = std::pow(hi, e1) / e1 + std::pow(hi, e2) / (e1 * e2);

    // int_0^lo (hi - eta)^{e2} (lo - eta)^{-a} d eta, with eta = lo * u.
    double power_part = 0.0;
    if (hi == lo) {
        power_part = std::pow(lo, 3.0 - 2.0 * a) / (3.0 - 2.0 * a);
    } else {
        power_part = std::pow(lo, e1) * rule.integrate([&](double u) { return std::pow(hi - lo * u, e2); });
    }

    const double g = gamma(1.0 - a);
    return (constant * std::pow(lo, e1) / e1 - power_part / (e1 * e2)) / (g * g);
}

double psi_eval(const BasisFunction& b, double xi, double eta, int dxi_order) {
    check_unit(xi, "psi_eval");
    check_unit(eta, "psi_eval");
    if (dxi_order < 0 || dxi_order > 1) throw DomainError("psi_eval: dxi_order must be 0 or 1");

    const double x = b.center.xi;
    const double t = b.center.eta;
    double value = r2(t, eta) * space_operator(b.k, x, xi, dxi_order);
    if (b.time_derivative) value += caputo_time_kernel(eta, t, b.alpha) * r3(x, xi, 0, dxi_order);
    return value;
}

double apply_operator(const BasisFunction& b, Point at, const Coefficients& c, const QuadratureRule& rule) {
    check_unit(at.xi, "apply_operator");
    check_unit(at.eta, "apply_operator");
    const double x = b.center.xi;
    const double t = b.center.eta;

    // psi_b = T(eta) r3(x, xi) + r2(t, eta) S(xi),  S = (k1 d_xx + k2 + k3 d_x) r3(x, .)
    const double s0 = space_operator(b.k, x, at.xi, 0);
    const double s1 = space_operator(b.k, x, at.xi, 1);
    const double s2 = space_operator(b.k, x, at.xi, 2);
    double value = r2(t, at.eta) * (c.k1 * s2 + c.k2 * s0 + c.k3 * s1);

    if (b.time_derivative) {
        const double time_kernel = caputo_time_kernel(at.eta, t, b.alpha);
        const double space_kernel = c.k1 * r3(x, at.xi, 0, 2) + c.k2 * r3(x, at.xi) + c.k3 * r3(x, at.xi, 0, 1);
        value += time_kernel * space_kernel;
        // D^alpha applied to r2(t, .) at at.eta: by symmetry of r2 this is the
        // single transform with the roles of the arguments exchanged.
        value += caputo_time_kernel(t, at.eta, b.alpha) * s0;
        value += double_caputo_time_kernel(t, at.eta, b.alpha, rule) * r3(x, at.xi);
    }
    return value;
}

double gram_entry(const BasisFunction& b_i, const BasisFunction& b_j, const QuadratureRule& rule) {
    return apply_operator(b_j, b_i.center, b_i.k, rule);
}

CollocationBasis::CollocationBasis(Problem problem, CollocationGrid grid, OperatorOptions options)
    : problem_(std::move(problem)), grid_(std::move(grid)), options_(options) {
    check_problem(problem_);
    if (options_.quadrature_nodes < 1) throw DomainError("quadrature node count must be positive");
    if (!problem_.alpha.is_classical()) rule_ = gauss_jacobi(problem_.alpha.value(), options_.quadrature_nodes);

    functions_.reserve(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        const Point& c = grid_[i];
        BasisFunction b;
        b.index = i;
        b.center = c;
        b.k = {problem_.k1(c.xi, c.eta), problem_.k2(c.xi, c.eta), problem_.k3(c.xi, c.eta)};
        b.alpha = problem_.alpha;
        b.time_derivative = options_.time_derivative;
        functions_.push_back(b);
    }
}

double CollocationBasis::psi(std::size_t i, double xi, double eta, int dxi_order) const {
    return psi_eval(functions_.at(i), xi, eta, dxi_order);
}

double CollocationBasis::apply(std::size_t i, double xi, double eta) const {
    const Coefficients c{problem_.k1(xi, eta), problem_.k2(xi, eta), problem_.k3(xi, eta)};
    return apply_operator(functions_.at(i), {xi, eta}, c, rule_);
}

GramMatrix CollocationBasis::assemble_gram() const {
    const auto n = static_cast<Eigen::Index>(functions_.size());
    GramMatrix g{Eigen::MatrixXd(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            double v = 0.0;
            try {
                v = gram_entry(functions_[static_cast<std::size_t>(i)], functions_[static_cast<std::size_t>(j)], rule_);
            } catch (const std::exception& e) {
                throw NumericalError("Gram entry (" + std::to_string(i) + ", " + std::to_string(j) + "): " + e.what());
            }
            if (!std::isfinite(v)) {
                throw NumericalError("Gram entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is not finite");
            }
            g.entries(i, j) = v;
        }
    }
    return g;
}

GramMatrix assemble_gram(const CollocationGrid& grid, const Problem& problem, OperatorOptions options) {
    return CollocationBasis(problem, grid, options).assemble_gram();
}

}  // namespace rkb
