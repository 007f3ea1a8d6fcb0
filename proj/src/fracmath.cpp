#include "rkb/fracmath.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

#include "rkb/error.hpp"

namespace rkb {

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("fractional order must satisfy 0 < alpha <= 1, got " +
                          std::to_string(alpha));
    }
}

double gamma(double x) {
    if (std::isnan(x)) return x;
    if (x <= 0.0 && x == std::floor(x)) {
        throw DomainError("gamma: pole at x = " + std::to_string(x));
    }
    return std::tgamma(x);
}

double caputo_power(double exponent, FractionalOrder alpha, double t) {
    if (t < 0.0) throw DomainError("caputo_power: t must be non-negative");
    if (exponent == 0.0) return 0.0;
    const double a = alpha.value();
    if (exponent < a) {
        throw DomainError("caputo_power: exponent must be 0 or >= alpha");
    }
    return gamma(exponent + 1.0) / gamma(exponent + 1.0 - a) * std::pow(t, exponent - a);
}

double weighted_moment(int m, double alpha, double a, double b, double c) {
    if (m < 0) throw DomainError("weighted_moment: m must be non-negative");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("weighted_moment: alpha must lie in (0,1)");
    if (!(0.0 <= a && a <= b)) throw DomainError("weighted_moment: need 0 <= a <= b");
    if (b > c) throw DomainError("weighted_moment: upper limit beyond the singular point");
    if (a == b) return 0.0;

    // u = c - r:  int_{c-b}^{c-a} (c-u)^m u^{-alpha} du
    const double u_lo = c - b;
    const double u_hi = c - a;
    double sum = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
        const double e = j + 1.0 - alpha;
        const double span = std::pow(u_hi, e) - (u_lo > 0.0 ? std::pow(u_lo, e) : 0.0);
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        sum += sign * binom * std::pow(c, m - j) * span / e;
        binom = binom * (m - j) / (j + 1);
    }
    return sum;
}

QuadratureRule gauss_jacobi(double alpha, int n_nodes) {
    if (n_nodes < 1) throw DomainError("gauss_jacobi: need at least one node");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("gauss_jacobi: alpha must lie in (0,1)");

    // Jacobi weight (1-x)^a (1+x)^b on [-1,1] with a = -alpha, b = 0.
    const double a = -alpha;
    const double b = 0.0;
    const auto n = static_cast<Eigen::Index>(n_nodes);

    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
    diag(0) = (b - a) / (a + b + 2.0);
    for (Eigen::Index k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double s = 2.0 * kk + a + b;
        diag(k) = (b * b - a * a) / (s * (s + 2.0));
        const double beta = 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) / (s * s * (s + 1.0) * (s - 1.0));
        sub(k - 1) = std::sqrt(beta);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("gauss_jacobi: eigen-solve of the Jacobi matrix failed");
    }

    // Mass of the weight on (0,1): int_0^1 (1-u)^{-alpha} du.
    const double mass = 1.0 / (1.0 - alpha);
    QuadratureRule rule;
    rule.alpha = alpha;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        const double v0 = solver.eigenvectors()(0, k);
        rule.nodes[static_cast<std::size_t>(k)] = 0.5 * (1.0 + solver.eigenvalues()(k));
        rule.weights[static_cast<std::size_t>(k)] = mass * v0 * v0;
    }
    return rule;
}

}  // namespace rkb
