#include "rkb/orthonormalize.hpp"

#include <cmath>

#include "rkb/error.hpp"

namespace rkb {

OrthonormalBasis compute_beta(const GramMatrix& g) {
    const Eigen::Index n = g.entries.rows();
    if (n == 0 || g.entries.cols() != n) throw DomainError("compute_beta: Gram matrix must be square and non-empty");

    OrthonormalBasis out;
    out.gram.entries = 0.5 * (g.entries + g.entries.transpose());
    const Eigen::MatrixXd& s = out.gram.entries;

    // Left-looking Cholesky and its inverse in extended precision. The Gram
    // matrices are ill conditioned (cond ~1e9 at n = 100), so double would eat
    // most of the orthonormality margin.
    using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    const Mat sl = s.cast<long double>();
    Mat l = Mat::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const long double pivot = sl(k, k) - l.row(k).head(k).squaredNorm();
        if (!(pivot > kPivotTolerance * std::abs(sl(k, k)))) {
            throw NotPositiveDefinite(static_cast<std::size_t>(k), static_cast<double>(pivot));
        }
        const long double d = std::sqrt(pivot);
        l(k, k) = d;
        for (Eigen::Index i = k + 1; i < n; ++i) {
            l(i, k) = (sl(i, k) - l.row(i).head(k).dot(l.row(k).head(k))) / d;
        }
    }

    // beta = L^{-1}, column by column by forward substitution.
    Mat beta = Mat::Zero(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        beta(c, c) = 1.0L / l(c, c);
        for (Eigen::Index i = c + 1; i < n; ++i) {
            long double acc = 0.0L;
            for (Eigen::Index k = c; k < i; ++k) acc += l(i, k) * beta(k, c);
            beta(i, c) = -acc / l(i, i);
        }
    }
    out.beta = beta.cast<double>();
    return out;
}

double orthonormality_defect(const OrthonormalBasis& basis) {
    // Evaluated in long double so the rounding of the product itself does not
    // dominate the measured defect.
    using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    const Mat b = basis.beta.cast<long double>();
    const Mat product = b * basis.gram.entries.cast<long double>() * b.transpose();
    return static_cast<double>((product - Mat::Identity(product.rows(), product.cols())).cwiseAbs().maxCoeff());
}

}  // namespace rkb
