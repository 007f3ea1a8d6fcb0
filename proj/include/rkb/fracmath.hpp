#pragma once

#include <cstddef>
#include <vector>

namespace rkb {

inline constexpr int kDefaultQuadratureNodes = 64;

/// Order of the Caputo time derivative, 0 < alpha <= 1.
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha);

    double value() const noexcept { return alpha_; }
    /// alpha == 1: the Caputo derivative degenerates to the classical one.
    bool is_classical() const noexcept { return alpha_ == 1.0; }

private:
    double alpha_;
};

/// Gauss rule on (0,1) for the weight (1-u)^{-alpha}.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double alpha = 0.0;

    std::size_t size() const noexcept { return nodes.size(); }

    /// Sum of w_k f(u_k), i.e. an approximation of int_0^1 f(u) (1-u)^{-alpha} du.
    template <class F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t k = 0; k < nodes.size(); ++k) acc += weights[k] * f(nodes[k]);
        return acc;
    }
};

/// Gamma function. Lanczos approximation for x >= 0.5, reflection below.
/// Throws DomainError at the poles 0, -1, -2, ...
double gamma(double x);

/// Caputo derivative of order alpha of t^exponent, evaluated at t:
/// Gamma(k+1)/Gamma(k+1-alpha) t^{k-alpha}, and 0 for the constant k = 0.
/// Requires exponent == 0 or exponent >= alpha.
double caputo_power(double exponent, FractionalOrder alpha, double t);

/// int_a^b r^m (c-r)^{-alpha} dr in closed form, 0 <= a <= b <= c, 0 < alpha < 1.
///
/// The substitution u = c - r moves the expansion point to the singular
/// endpoint, so every term is a plain power u^{j+1-alpha} and no cancellation
/// occurs when b approaches c.
double weighted_moment(int m, double alpha, double a, double b, double c);

/// n-point Gauss-Jacobi rule for the weight (1-u)^{-alpha} on (0,1), exact for
/// polynomials of degree <= 2n-1. Nodes and weights come from the symmetric
/// tridiagonal Jacobi matrix of the monic recurrence (Golub-Welsch).
QuadratureRule gauss_jacobi(double alpha, int n_nodes);

}  // namespace rkb
