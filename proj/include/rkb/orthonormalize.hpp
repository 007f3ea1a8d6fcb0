#pragma once

#include <Eigen/Core>

#include "rkb/operator.hpp"

namespace rkb {

/// Gram-Schmidt coefficients: psibar_i = sum_{k<=i} beta(i,k) psi_k.
struct OrthonormalBasis {
    Eigen::MatrixXd beta;  // lower triangular, positive diagonal
    GramMatrix gram;       // the symmetrized Gram matrix beta was computed from

    std::size_t size() const noexcept { return static_cast<std::size_t>(beta.rows()); }
};

/// Relative pivot threshold below which the Gram matrix is treated as singular.
inline constexpr double kPivotTolerance = 1e-12;

/// beta = L^{-1} with (G + G^T)/2 = L L^T. This is the Gram-Schmidt process in
/// the Gram inner product, carried out through a Cholesky factorization.
/// Throws NotPositiveDefinite with the index of the first pivot d_k that is not
/// above kPivotTolerance * G(k,k).
OrthonormalBasis compute_beta(const GramMatrix& g);

/// max |beta G beta^T - I|
double orthonormality_defect(const OrthonormalBasis& basis);

}  // namespace rkb
