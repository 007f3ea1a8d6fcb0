#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rkb/fracmath.hpp"

namespace rkb {

/// Scalar field on the unit square, (xi, eta) -> value.
using Field = std::function<double(double xi, double eta)>;

/// Exact solution of the form X(xi) * eta^p. `space(xi, order)` returns the
/// order-th derivative of X, order in 0..2.
struct SeparableSolution {
    std::function<double(double xi, int order)> space;
    double time_power = 1.0;

    double operator()(double xi, double eta) const;
    double dxi(double xi, double eta, int order) const;
};

/// D^alpha_eta y + k1 y_xixi + k2 y + k3 y_xi + k4 y y_xi = f on [0,1]^2,
/// with y(xi,0) = y(0,eta) = y(1,eta) = 0.
struct Problem {
    std::string name;
    FractionalOrder alpha;
    Field k1;
    Field k2;
    Field k3;
    Field k4;
    Field f;
    std::optional<SeparableSolution> exact;
};

/// Samples the coefficient fields and the exact solution on a boundary mesh.
/// Throws DomainError when a field is missing or non-finite, or when the exact
/// solution violates the homogeneous conditions by more than 1e-12.
void check_problem(const Problem& problem);

}  // namespace rkb
