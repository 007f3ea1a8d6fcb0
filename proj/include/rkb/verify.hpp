#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rkb {

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;      // measured defect
    double tolerance = 0.0;  // bound it was compared with
    std::string detail;
};

struct VerifyOptions {
    std::vector<double> alphas{0.7, 0.8, 0.9};
    int quadrature_nodes = 64;
    /// Fixture: constant added to every forcing term before the consistency check.
    double forcing_perturbation = 0.0;
    /// Fixture: append a duplicate collocation point to the Gram PD check.
    bool duplicate_point = false;
    std::uint64_t seed = 20190611;
};

/// Runs the invariant suite: special-function identities, quadrature vs
/// closed forms, kernel symmetry and reproducing properties, Caputo kernels
/// against independent quadrature oracles, Gram symmetry and positive
/// definiteness, orthonormality of beta, and forcing consistency of both
/// benchmark problems.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

namespace oracle {

/// int_0^t g(r) (t-r)^{-alpha} dr by tanh-sinh quadrature in w = t - r, which
/// copes with the endpoint singularity directly.
/// `kinks` lists points in (0,t) where g is not smooth.
double singular_integral(const std::function<double(double)>& g, double t, double alpha,
                         const std::vector<double>& kinks = {});

/// Product-rectangle rule on `cells` cells: the weight (t-r)^{-alpha} is
/// integrated exactly on each cell and g is sampled once, at the weighted
/// centroid. Cells are aligned with `kink` when it lies in (0,t).
double product_rectangle(const std::function<double(double)>& g, double t, double alpha, int cells,
                         double kink = -1.0);

/// Caputo transform of r -> r2(r, eta) at t_i by product_rectangle.
double caputo_time_kernel(double eta, double t_i, double alpha, int cells = 100000);

/// Double transform 1/Gamma(1-a)^2 int int (1 + min(r,s)) (t_i-r)^{-a} (t_j-s)^{-a}
/// by nested adaptive quadrature split at the diagonal r = s.
double double_caputo_time_kernel(double t_i, double t_j, double alpha, double tol = 1e-12);

/// Caputo derivative of t^k at t via singular_integral.
double caputo_power(double k, double alpha, double t);

}  // namespace oracle

}  // namespace rkb
