#include "rkb/kernels.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "rkb/error.hpp"

namespace rkb {
namespace {

// Bivariate polynomial sum c[i][j] u^i v^j with exact partial derivatives.
template <int N>
struct Poly2 {
    std::array<std::array<double, N>, N> c{};

    constexpr Poly2 operator*(const Poly2& o) const {
        Poly2 r;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                for (int k = 0; k + i < N; ++k)
                    for (int l = 0; l + j < N; ++l) r.c[i + k][j + l] += c[i][j] * o.c[k][l];
        return r;
    }

    constexpr Poly2 operator+(const Poly2& o) const {
        Poly2 r = *this;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) r.c[i][j] += o.c[i][j];
        return r;
    }

    constexpr Poly2 scaled(double s) const {
        Poly2 r = *this;
        for (auto& row : r.c)
            for (auto& v : row) v *= s;
        return r;
    }

    static constexpr Poly2 monomial(double coef, int i, int j) {
        Poly2 r;
        r.c[i][j] = coef;
        return r;
    }

    // d^du u^i = i!/(i-du)! u^{i-du}
    double eval(double u, double v, int du, int dv) const {
        double acc = 0.0;
        double upow = 1.0;
        for (int i = du; i < N; ++i) {
            double fi = 1.0;
            for (int k = 0; k < du; ++k) fi *= (i - k);
            double row = 0.0;
            double vpow = 1.0;
            for (int j = dv; j < N; ++j) {
                double fj = 1.0;
                for (int k = 0; k < dv; ++k) fj *= (j - k);
                row += c[i][j] * fj * vpow;
                vpow *= v;
            }
            acc += fi * row * upow;
            upow *= u;
        }
        return acc;
    }
};

// r2, branch eta <= t, in (t, eta):  eta t + t eta^2 / 2 - eta^3 / 6
using P2 = Poly2<4>;
constexpr P2 kR2Lower = P2::monomial(1.0, 1, 1) + P2::monomial(0.5, 1, 2) + P2::monomial(-1.0 / 6.0, 0, 3);

// r3, branch xi <= x, in (x, xi):  (x-1) * G(x, xi) with
// G = -xi (xi x^4 - 4 xi x^3 + 6 xi x^2 + x xi^4 - 5 x xi^3 - 120 x xi + 120 x + xi^4) / 120.
// The factor (x-1) stays outside the table so that r3 vanishes exactly at 1.
using P3 = Poly2<6>;
constexpr P3 kR3Bracket = P3::monomial(1.0, 4, 1) + P3::monomial(-4.0, 3, 1) + P3::monomial(6.0, 2, 1) +
                          P3::monomial(1.0, 1, 4) + P3::monomial(-5.0, 1, 3) +
                          P3::monomial(-120.0, 1, 1) + P3::monomial(120.0, 1, 0) + P3::monomial(1.0, 0, 4);
constexpr P3 kR3Cofactor = (P3::monomial(1.0, 0, 1) * kR3Bracket).scaled(-1.0 / 120.0);

// d^du/dx^du d^dv/dxi^dv [(x-1) G(x, xi)]
double r3_lower(double x, double xi, int du, int dv) {
    double value = (x - 1.0) * kR3Cofactor.eval(x, xi, du, dv);
    if (du > 0) value += du * kR3Cofactor.eval(x, xi, du - 1, dv);
    return value;
}

void check_unit(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainError(std::string(what) + ": argument outside [0,1]: " + std::to_string(v));
    }
}

void check_order(int order, int max_order, const char* what) {
    if (order < 0 || order > max_order) {
        throw DomainError(std::string(what) + ": derivative order out of range");
    }
}

}  // namespace

double r1(double x, double xi) {
    check_unit(x, "r1");
    check_unit(xi, "r1");
    return 1.0 + std::min(x, xi);
}

double r2(double t, double eta, int dt_order, int deta_order) {
    check_unit(t, "r2");
    check_unit(eta, "r2");
    check_order(dt_order, 2, "r2");
    check_order(deta_order, 2, "r2");
    // The eta > t branch is the eta <= t branch with the arguments swapped.
    if (eta <= t) return kR2Lower.eval(t, eta, dt_order, deta_order);
    return kR2Lower.eval(eta, t, deta_order, dt_order);
}

double r3(double x, double xi, int dx_order, int dxi_order) {
    check_unit(x, "r3");
    check_unit(xi, "r3");
    check_order(dx_order, 3, "r3");
    check_order(dxi_order, 3, "r3");
    // r3 vanishes identically on x = 1 (and on xi = 1), so do all derivatives
    // along the other variable. The diagonal branch would only get there up to
    // cancellation.
    if ((x == 1.0 && dx_order == 0) || (xi == 1.0 && dxi_order == 0)) return 0.0;
    if (xi <= x) return r3_lower(x, xi, dx_order, dxi_order);
    return r3_lower(xi, x, dxi_order, dx_order);
}

double product_kernel(const ProductKernelPoint& p, int dx, int dt, int dxi, int deta) {
    check_order(dx, 2, "product_kernel");
    check_order(dxi, 2, "product_kernel");
    check_order(dt, 1, "product_kernel");
    check_order(deta, 1, "product_kernel");
    return r3(p.x, p.xi, dx, dxi) * r2(p.t, p.eta, dt, deta);
}

}  // namespace rkb
