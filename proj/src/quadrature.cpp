#include "knotbeta/quadrature.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace knotbeta {

static GaussRule compute_gauss(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess for the i-th root of P_n
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = -p1 / pp;
            z += dz;
            if (std::abs(dz) < std::numeric_limits<double>::epsilon()) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return rule;
}

const GaussRule& gauss_legendre(int n) {
    if (n < 1 || n > 128) throw std::invalid_argument("gauss_legendre: order out of range");
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
    return it->second;
}

std::vector<double> geometric_edges(double lo, double hi, double ratio) {
    if (!(lo > 0.0) || !(hi > lo) || !(ratio > 1.0))
        throw std::invalid_argument("geometric_edges: bad range");
    std::vector<double> edges{lo};
    double w = lo * (ratio - 1.0);
    while (edges.back() + w < hi) {
        edges.push_back(edges.back() + w);
        w *= ratio;
    }
    edges.push_back(hi);
    return edges;
}

std::vector<double> linear_edges(double lo, double hi, int k) {
    std::vector<double> edges(k + 1);
    for (int i = 0; i <= k; ++i) edges[i] = lo + (hi - lo) * i / k;
    return edges;
}

PanelNodes panel_nodes(const std::vector<double>& edges, int order) {
    const GaussRule& g = gauss_legendre(order);
    PanelNodes out;
    out.x.reserve((edges.size() - 1) * order);
    out.w.reserve((edges.size() - 1) * order);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double mid = 0.5 * (edges[p] + edges[p + 1]);
        const double half = 0.5 * (edges[p + 1] - edges[p]);
        for (int i = 0; i < order; ++i) {
            out.x.push_back(mid + half * g.nodes[i]);
            out.w.push_back(half * g.weights[i]);
        }
    }
    return out;
}

static double gauss_on(const std::function<double(double)>& f, double a, double b, int order) {
    const GaussRule& g = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < order; ++i) acc += g.weights[i] * f(mid + half * g.nodes[i]);
    return acc * half;
}

static double adaptive_rec(const std::function<double(double)>& f, double a, double b,
                           double tol, int depth) {
    const double coarse = gauss_on(f, a, b, 12);
    const double fine = gauss_on(f, a, b, 24);
    if (std::abs(fine - coarse) <= tol || depth >= 28) return fine;
    const double mid = 0.5 * (a + b);
    return adaptive_rec(f, a, mid, 0.5 * tol, depth + 1) +
           adaptive_rec(f, mid, b, 0.5 * tol, depth + 1);
}

double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                      double rel_tol, double abs_tol) {
    const double rough = std::abs(gauss_on(f, a, b, 12));
    const double tol = std::max(abs_tol, rel_tol * rough);
    return adaptive_rec(f, a, b, tol, 0);
}

} // namespace knotbeta
