#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace knotbeta {

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights; // sum to 2
};

/// Gauss-Legendre rule of order n, computed by Newton iteration on the
/// Legendre recurrence and cached per order.
const GaussRule& gauss_legendre(int n);

/// Panel edges growing geometrically from lo toward hi; last edge lands on hi.
std::vector<double> geometric_edges(double lo, double hi, double ratio);

/// k equal panels over [lo, hi] (k+1 edges).
std::vector<double> linear_edges(double lo, double hi, int k);

struct PanelNodes {
    std::vector<double> x;
    std::vector<double> w;
};

/// Gauss nodes/weights of the given order mapped onto each panel.
PanelNodes panel_nodes(const std::vector<double>& edges, int order);

/// Adaptive 1-D quadrature: composite Gauss refined by bisection until the
/// order-n and order-2n estimates of every panel agree to the tolerance.
double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                      double rel_tol, double abs_tol);

} // namespace knotbeta
