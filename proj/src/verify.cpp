#include "rkb/verify.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "rkb/error.hpp"
#include "rkb/fracmath.hpp"
#include "rkb/kernels.hpp"
#include "rkb/operator.hpp"
#include "rkb/orthonormalize.hpp"
#include "rkb/problems.hpp"

namespace rkb {

namespace oracle {

double singular_integral(const std::function<double(double)>& g, double t, double alpha,
                         const std::vector<double>& kinks) {
    if (t <= 0.0) return 0.0;
    // Integrate in w = t - r so the weight w^{-alpha} sits at the left end of the first piece.
    std::vector<double> breaks{0.0, t};
    for (double k : kinks)
        if (k > 0.0 && k < t) breaks.push_back(t - k);
    std::sort(breaks.begin(), breaks.end());

    static thread_local boost::math::quadrature::tanh_sinh<double> ts;
    auto integrand = [&](double w) { return g(t - w) * std::pow(w, -alpha); };
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] <= breaks[i]) continue;
        acc += ts.integrate(integrand, breaks[i], breaks[i + 1], 1e-13);
    }
    return acc;
}

double product_rectangle(const std::function<double(double)>& g, double t, double alpha, int cells,
                         double kink) {
    if (t <= 0.0) return 0.0;
    const double e = 1.0 - alpha;
    // Cell edges, uniform on each side of the kink when it lies inside (0, t).
    std::vector<double> edges;
    edges.reserve(static_cast<std::size_t>(cells) + 2);
    auto fill = [&](double lo, double hi, int m) {
        for (int k = 0; k < m; ++k) edges.push_back(lo + (hi - lo) * k / m);
    };
    if (kink > 0.0 && kink < t) {
        const int left = std::clamp(static_cast<int>(std::lround(cells * kink / t)), 1, cells - 1);
        fill(0.0, kink, left);
        fill(kink, t, cells - left);
    } else {
        fill(0.0, t, cells);
    }
    edges.push_back(t);

    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double u0 = t - edges[k];
        const double u1 = t - edges[k + 1];
        const double w = (std::pow(u0, e) - std::pow(u1, e)) / e;
        // Sample at the weighted centroid so that linear g is integrated exactly.
        const double m1 = (std::pow(u0, e + 1.0) - std::pow(u1, e + 1.0)) / (e + 1.0);
        acc += w * g(t - m1 / w);
    }
    return acc;
}

double caputo_time_kernel(double eta, double t_i, double alpha, int cells) {
    auto g = [eta](double r) { return r2(r, eta, 1, 0); };
    return product_rectangle(g, t_i, alpha, cells, eta) / std::tgamma(1.0 - alpha);
}

double double_caputo_time_kernel(double t_i, double t_j, double alpha, double) {
    auto inner = [&](double r) {
        auto g = [r](double s) { return r2(r, s, 1, 1); };
        return singular_integral(g, t_j, alpha, {r});
    };
    const double gam = std::tgamma(1.0 - alpha);
    return singular_integral(inner, t_i, alpha, {t_j}) / (gam * gam);
}

double caputo_power(double k, double alpha, double t) {
    if (k == 0.0) return 0.0;
    auto g = [k](double r) { return k * std::pow(r, k - 1.0); };
    return singular_integral(g, t, alpha) / std::tgamma(1.0 - alpha);
}

}  // namespace oracle

namespace {

using boost::math::quadrature::gauss;

CheckResult make_check(std::string name, double value, double tol, std::string detail = {}) {
    return {std::move(name), value <= tol, value, tol, std::move(detail)};
}

double integrate_gl(const std::function<double(double)>& f, double a, double b) {
    if (b <= a) return 0.0;
    return gauss<double, 32>::integrate(f, a, b);
}

std::vector<CheckResult> fracmath_checks() {
    std::vector<CheckResult> out;
    const double pi = std::numbers::pi;

    double worst = 0.0;
    for (double a : {0.7, 0.8, 0.9}) {
        const double lhs = pi / (std::sin(pi * a) * gamma(-1.0 - a));
        const double rhs = gamma(2.0 + a);
        worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    out.push_back(make_check("gamma.reflection_identity", worst, 1e-10));

    worst = 0.0;
    for (double a : {0.3, 0.5, 0.7, 0.9}) {
        const QuadratureRule rule = gauss_jacobi(a, 16);
        for (int m = 0; m <= 6; ++m) {
            const double q = rule.integrate([m](double u) { return std::pow(u, m); });
            worst = std::max(worst, std::abs(q - weighted_moment(m, a, 0.0, 1.0, 1.0)));
        }
    }
    out.push_back(make_check("fracmath.gauss_jacobi_vs_weighted_moment", worst, 1e-12));

    double worst_moments = 0.0;
    double worst_quadrature = 0.0;
    for (double a : {0.3, 0.5, 0.7, 0.9}) {
        for (int k = 1; k <= 3; ++k) {
            for (double t : {0.25, 0.5, 1.0}) {
                const double d = caputo_power(k, FractionalOrder(a), t);
                const double via_moments = k * weighted_moment(k - 1, a, 0.0, t, t) / gamma(1.0 - a);
                worst_moments = std::max(worst_moments, std::abs(d - via_moments));
                worst_quadrature = std::max(worst_quadrature, std::abs(d - oracle::caputo_power(k, a, t)));
            }
        }
    }
    out.push_back(make_check("fracmath.caputo_power_vs_weighted_moment", worst_moments, 1e-11));
    out.push_back(make_check("fracmath.caputo_power_vs_quadrature", worst_quadrature, 1e-11));
    return out;
}

std::vector<CheckResult> kernel_checks(std::mt19937_64& rng) {
    std::vector<CheckResult> out;
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double asym = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double x = unit(rng);
        const double y = unit(rng);
        asym = std::max({asym, std::abs(r3(x, y) - r3(y, x)), std::abs(r2(x, y) - r2(y, x))});
    }
    out.push_back(make_check("kernels.symmetry", asym, 0.0));

    // <g, R_x> in each space must return g(x).
    double worst = 0.0;
    for (double x : {0.2, 0.5, 0.8}) {
        auto f3 = [x](double xi) { return r3(x, xi, 0, 3); };
        auto ip3 = [&](auto g0, auto g1, auto g3) {
            const double boundary = g0(0.0) * r3(x, 0.0) + g1(0.0) * r3(x, 0.0, 0, 1) + g0(1.0) * r3(x, 1.0);
            auto integrand = [&](double xi) { return g3(xi) * f3(xi); };
            return boundary + integrate_gl(integrand, 0.0, x) + integrate_gl(integrand, x, 1.0);
        };
        // g = xi (1 - xi)
        worst = std::max(worst, std::abs(ip3([](double s) { return s * (1.0 - s); },
                                             [](double s) { return 1.0 - 2.0 * s; }, [](double) { return 0.0; }) -
                                         x * (1.0 - x)));
        // g = xi^2 (1 - xi)
        worst = std::max(worst, std::abs(ip3([](double s) { return s * s * (1.0 - s); },
                                             [](double s) { return 2.0 * s - 3.0 * s * s; },
                                             [](double) { return -6.0; }) -
                                         x * x * (1.0 - x)));
    }
    out.push_back(make_check("kernels.reproducing_r3", worst, 1e-10));

    worst = 0.0;
    for (double t : {0.2, 0.5, 0.8}) {
        auto ip2 = [&](auto g0, auto g1, auto g2) {
            const double boundary = g0(0.0) * r2(t, 0.0) + g1(0.0) * r2(t, 0.0, 0, 1);
            auto integrand = [&](double eta) { return g2(eta) * r2(t, eta, 0, 2); };
            return boundary + integrate_gl(integrand, 0.0, t) + integrate_gl(integrand, t, 1.0);
        };
        worst = std::max(worst, std::abs(ip2([](double s) { return s; }, [](double) { return 1.0; },
                                             [](double) { return 0.0; }) -
                                         t));
        worst = std::max(worst, std::abs(ip2([](double s) { return s * s * s; }, [](double s) { return 3.0 * s * s; },
                                             [](double s) { return 6.0 * s; }) -
                                         t * t * t));
    }
    out.push_back(make_check("kernels.reproducing_r2", worst, 1e-10));

    worst = 0.0;
    for (double x : {0.2, 0.5, 0.8}) {
        // d/dxi r1(x, xi) is the indicator of xi < x.
        auto df = [x](double xi) { return xi < x ? 1.0 : 0.0; };
        auto integrand = [&](double xi) { return 2.0 * xi * df(xi); };
        const double ip = 1.0 * r1(x, 0.0) + integrate_gl(integrand, 0.0, x) + integrate_gl(integrand, x, 1.0);
        worst = std::max(worst, std::abs(ip - (1.0 + x * x)));
    }
    out.push_back(make_check("kernels.reproducing_r1", worst, 1e-10));

    worst = 0.0;
    const double h = 1e-6;
    std::uniform_real_distribution<double> interior(0.01, 0.99);
    for (int k = 0; k < 100; ++k) {
        double x = interior(rng);
        double y = interior(rng);
        if (std::abs(x - y) < 0.01) y = (x < 0.5) ? x + 0.2 : x - 0.2;
        const double fd_r2_t = (r2(x + h, y) - r2(x - h, y)) / (2 * h);
        const double fd_r2_e = (r2(x, y + h) - r2(x, y - h)) / (2 * h);
        const double fd_r3_x = (r3(x + h, y) - r3(x - h, y)) / (2 * h);
        const double fd_r3_xi = (r3(x, y + h) - r3(x, y - h)) / (2 * h);
        worst = std::max({worst, std::abs(fd_r2_t - r2(x, y, 1, 0)), std::abs(fd_r2_e - r2(x, y, 0, 1)),
                          std::abs(fd_r3_x - r3(x, y, 1, 0)), std::abs(fd_r3_xi - r3(x, y, 0, 1))});
    }
    out.push_back(make_check("kernels.finite_differences", worst, 1e-7));
    return out;
}

std::vector<CheckResult> caputo_kernel_checks(std::mt19937_64& rng, int nodes) {
    std::vector<CheckResult> out;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> alpha_dist(0.1, 0.95);

    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double eta = unit(rng);
        const double t = unit(rng);
        const double a = alpha_dist(rng);
        worst = std::max(worst, std::abs(rkb::caputo_time_kernel(eta, t, FractionalOrder(a)) -
                                         oracle::caputo_time_kernel(eta, t, a)));
    }
    out.push_back(make_check("operator.caputo_time_kernel_vs_product_rectangle", worst, 1e-8));

    worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double eta = unit(rng);
        const double t = unit(rng);
        const double a = alpha_dist(rng);
        auto g = [eta](double r) { return r2(r, eta, 1, 0); };
        const double adaptive = oracle::singular_integral(g, t, a, {eta}) / std::tgamma(1.0 - a);
        worst = std::max(worst, std::abs(rkb::caputo_time_kernel(eta, t, FractionalOrder(a)) - adaptive));
    }
    out.push_back(make_check("operator.caputo_time_kernel_vs_adaptive_oracle", worst, 1e-8));

    double worst_oracle = 0.0;
    double worst_nodes = 0.0;
    const std::pair<double, double> pairs[] = {{0.2, 0.2}, {0.2, 0.4}, {0.4, 0.2}, {0.9, 1.0}, {0.5, 0.7}};
    for (double a : {0.5, 0.7, 0.9}) {
        const QuadratureRule rule = gauss_jacobi(a, nodes);
        const QuadratureRule fine = gauss_jacobi(a, 2 * nodes);
        for (const auto& [ti, tj] : pairs) {
            const double v = double_caputo_time_kernel(ti, tj, FractionalOrder(a), rule);
            worst_oracle = std::max(worst_oracle, std::abs(v - oracle::double_caputo_time_kernel(ti, tj, a)));
            worst_nodes = std::max(worst_nodes, std::abs(v - double_caputo_time_kernel(ti, tj, FractionalOrder(a), fine)));
        }
    }
    out.push_back(make_check("operator.double_caputo_vs_adaptive_oracle", worst_oracle, 1e-8));
    out.push_back(make_check("operator.double_caputo_node_convergence", worst_nodes, 1e-10));
    return out;
}

std::vector<CheckResult> gram_checks(const VerifyOptions& options) {
    std::vector<CheckResult> out;
    double worst_sym = 0.0;
    double worst_ortho = 0.0;
    std::ostringstream pd_detail;
    bool pd_ok = true;

    for (double a : options.alphas) {
        for (ExampleId id : {ExampleId::variable_coefficients, ExampleId::constant_coefficients}) {
            if (id == ExampleId::constant_coefficients && !(a > 0.5)) continue;
            const int side = (id == ExampleId::variable_coefficients) ? 5 : 10;
            const CollocationBasis basis(build_example(id, a), CollocationGrid::uniform(side, side),
                                         OperatorOptions{.quadrature_nodes = options.quadrature_nodes});
            const GramMatrix g = basis.assemble_gram();
            const Eigen::MatrixXd diff = (g.entries - g.entries.transpose()).cwiseAbs();
            const Eigen::MatrixXd scale = (g.entries.cwiseAbs().array() + 1.0).matrix();
            worst_sym = std::max(worst_sym, diff.cwiseQuotient(scale).maxCoeff());
            try {
                worst_ortho = std::max(worst_ortho, orthonormality_defect(compute_beta(g)));
            } catch (const NotPositiveDefinite& e) {
                pd_ok = false;
                pd_detail << basis.problem().name << " alpha=" << a << " pivot " << e.pivot() << "; ";
            }
        }
    }

    if (options.duplicate_point) {
        const double a = options.alphas.empty() ? 0.9 : options.alphas.front();
        std::vector<Point> pts = CollocationGrid::uniform(2, 2).points();
        pts.push_back(pts.front());
        try {
            compute_beta(assemble_gram(CollocationGrid::from_points(pts), build_benchmark1(a),
                                       OperatorOptions{.quadrature_nodes = options.quadrature_nodes}));
        } catch (const NotPositiveDefinite& e) {
            pd_ok = false;
            pd_detail << "duplicated-point grid: pivot " << e.pivot() << "; ";
        }
    }

    out.push_back(make_check("operator.gram_symmetry", worst_sym, 1e-8));
    out.push_back({"orthonormalize.positive_definite", pd_ok, pd_ok ? 0.0 : 1.0, 0.0, pd_detail.str()});
    out.push_back(make_check("orthonormalize.beta_g_beta_identity", worst_ortho, 1e-8));
    return out;
}

std::vector<CheckResult> forcing_checks(const VerifyOptions& options) {
    const std::vector<Point> mesh = square_mesh(10);
    double worst = 0.0;
    std::ostringstream detail;
    for (double a : options.alphas) {
        for (ExampleId id : {ExampleId::variable_coefficients, ExampleId::constant_coefficients}) {
            if (id == ExampleId::constant_coefficients && !(a > 0.5)) continue;
            Problem p = build_example(id, a);
            if (options.forcing_perturbation != 0.0) {
                p.f = [f = p.f, d = options.forcing_perturbation](double xi, double eta) { return f(xi, eta) + d; };
            }
            const ForcingReport r = verify_forcing(p, mesh, 1e-10);
            if (r.max_discrepancy > worst) {
                worst = r.max_discrepancy;
                detail.str("");
                detail << p.name << " alpha=" << a << " at (" << r.worst.xi << ", " << r.worst.eta << ")";
            }
        }
    }
    return {make_check("problems.forcing_consistency", worst, 1e-10, detail.str())};
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
    std::mt19937_64 rng(options.seed);
    std::vector<CheckResult> all;
    auto append = [&all](std::vector<CheckResult> part) {
        for (auto& c : part) all.push_back(std::move(c));
    };
    append(fracmath_checks());
    append(kernel_checks(rng));
    append(caputo_kernel_checks(rng, options.quadrature_nodes));
    append(gram_checks(options));
    append(forcing_checks(options));
    return all;
}

}  // namespace rkb
