#pragma once

namespace rkb {

// Reproducing kernels of W_2^1, W_2^2 (g(0)=0) and W_2^3 (g(0)=g(1)=0) on [0,1].
// All arguments must lie in [0,1]; DomainError otherwise.

/// 1 + min(x, xi).
double r1(double x, double xi);

/// Kernel of W_2^2 and its partial derivatives (orders 0..2 in each slot).
/// On the diagonal eta == t the eta <= t branch is used.
double r2(double t, double eta, int dt_order = 0, int deta_order = 0);

/// Kernel of W_2^3 and its partial derivatives (orders 0..3 in each slot).
/// On the diagonal xi == x the xi <= x branch is used; mixed derivatives with
/// total order <= 4 are continuous across it.
double r3(double x, double xi, int dx_order = 0, int dxi_order = 0);

/// Evaluation point of the tensor kernel K_{(x,t)}(xi,eta) = r3(x,xi) r2(t,eta).
struct ProductKernelPoint {
    double x;
    double t;
    double xi;
    double eta;
};

/// Partial derivative of the tensor kernel; dx, dxi in 0..2, dt, deta in 0..1.
double product_kernel(const ProductKernelPoint& p, int dx = 0, int dt = 0, int dxi = 0, int deta = 0);

}  // namespace rkb
