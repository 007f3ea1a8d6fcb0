#pragma once

#include <cstddef>
#include <vector>

namespace rkb {

struct Point {
    double xi;
    double eta;
};

/// Ordered collocation points (xi_i, eta_i) in (0,1] x (0,1].
///
/// The uniform grid uses xi_i = i/p, eta_j = j/q (i, j >= 1) and is time-major:
/// the eta index advances fastest. The lagged nonlinearity of the solver makes
/// results depend on this ordering.
class CollocationGrid {
public:
    static CollocationGrid uniform(int p, int q);
    /// Custom point list, kept in the given order (p = n, q = 1). Points are
    /// not deduplicated; duplicates surface later as a Cholesky failure.
    static CollocationGrid from_points(std::vector<Point> points);

    const std::vector<Point>& points() const noexcept { return points_; }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    std::size_t size() const noexcept { return points_.size(); }
    int p() const noexcept { return p_; }
    int q() const noexcept { return q_; }

private:
    CollocationGrid(std::vector<Point> points, int p, int q);

    std::vector<Point> points_;
    int p_;
    int q_;
};

}  // namespace rkb
