#include "rkb/problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rkb/error.hpp"
#include "rkb/grid.hpp"

namespace rkb {

double SeparableSolution::operator()(double xi, double eta) const {
    return space(xi, 0) * std::pow(eta, time_power);
}

double SeparableSolution::dxi(double xi, double eta, int order) const {
    return space(xi, order) * std::pow(eta, time_power);
}

void check_problem(const Problem& problem) {
    const std::pair<const char*, const Field*> fields[] = {
        {"k1", &problem.k1}, {"k2", &problem.k2}, {"k3", &problem.k3},
        {"k4", &problem.k4}, {"f", &problem.f}};
    for (const auto& [name, field] : fields) {
        if (!*field) throw DomainError(problem.name + ": field " + name + " is not set");
    }

    constexpr int kMesh = 21;
    for (int a = 0; a < kMesh; ++a) {
        for (int b = 0; b < kMesh; ++b) {
            const double xi = static_cast<double>(a) / (kMesh - 1);
            const double eta = static_cast<double>(b) / (kMesh - 1);
            for (const auto& [name, field] : fields) {
                if (!std::isfinite((*field)(xi, eta))) {
                    throw DomainError(problem.name + ": field " + name + " is not finite at (" +
                                      std::to_string(xi) + ", " + std::to_string(eta) + ")");
                }
            }
        }
    }

    if (!problem.exact) return;
    const auto& y = *problem.exact;
    if (!(y.time_power > 0.0)) {
        throw DomainError(problem.name + ": exact solution must vanish at eta = 0");
    }
    for (int a = 0; a < kMesh; ++a) {
        const double s = static_cast<double>(a) / (kMesh - 1);
        const double worst = std::max({std::abs(y(s, 0.0)), std::abs(y(0.0, s)), std::abs(y(1.0, s))});
        if (worst > 1e-12) {
            throw DomainError(problem.name + ": exact solution violates the homogeneous conditions");
        }
    }
}

CollocationGrid::CollocationGrid(std::vector<Point> points, int p, int q)
    : points_(std::move(points)), p_(p), q_(q) {}

CollocationGrid CollocationGrid::uniform(int p, int q) {
    if (p < 1 || q < 1) throw DomainError("uniform grid needs p, q >= 1");
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(p) * static_cast<std::size_t>(q));
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= q; ++j) pts.push_back({static_cast<double>(i) / p, static_cast<double>(j) / q});
    return CollocationGrid(std::move(pts), p, q);
}

CollocationGrid CollocationGrid::from_points(std::vector<Point> points) {
    if (points.empty()) throw DomainError("collocation grid must not be empty");
    for (const auto& pt : points) {
        if (!(pt.xi > 0.0 && pt.xi <= 1.0 && pt.eta > 0.0 && pt.eta <= 1.0)) {
            throw DomainError("collocation points must lie in (0,1] x (0,1]");
        }
    }
    const int n = static_cast<int>(points.size());
    return CollocationGrid(std::move(points), n, 1);
}

}  // namespace rkb
