#include "knotbeta/jets.hpp"

#include <cmath>
#include <stdexcept>

namespace knotbeta {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

} // namespace

HSeries<double> chord_series(const ArcFrame& frame, int i, int r) {
    if (frame.max_order() < r + 1)
        throw std::invalid_argument("chord_series: frame derivative order too low");
    HSeries<double> G(r);
    G.c[0] = 1.0;
    for (int m = 1; m <= r; ++m) {
        double acc = 0.0;
        for (int p = 1; p <= m + 1; ++p) {
            const int q = m + 2 - p;
            if (q < 1) continue;
            acc += dot(frame.derivative(i, p), frame.derivative(i, q)) / (factorial(p) * factorial(q));
        }
        G.c[m] = acc;
    }
    return G;
}

HSeries<SPoly> series_pow(const HSeries<double>& G) {
    if (G.c.empty() || G.c[0] != 1.0)
        throw std::invalid_argument("series_pow: leading coefficient must be 1");
    const int r = G.order;
    // alpha = s/2 as a polynomial; the classical recurrence
    //   i b_i = sum_{k=1..i} ((alpha+1)k - i) a_k b_{i-k}
    const SPoly alpha(std::vector<double>{0.0, 0.5});
    HSeries<SPoly> H(r);
    H.c[0] = SPoly(1.0);
    for (int i = 1; i <= r; ++i) {
        SPoly acc;
        for (int k = 1; k <= i; ++k) {
            SPoly factor = alpha * static_cast<double>(k);
            factor += SPoly(static_cast<double>(k - i));
            acc += factor * G.c[k] * H.c[i - k];
        }
        H.c[i] = acc * (1.0 / i);
    }
    return H;
}

HSeries<double> series_pow_at(const HSeries<double>& G, double alpha) {
    if (G.c.empty() || G.c[0] != 1.0)
        throw std::invalid_argument("series_pow_at: leading coefficient must be 1");
    const int r = G.order;
    HSeries<double> H(r);
    H.c[0] = 1.0;
    for (int i = 1; i <= r; ++i) {
        double acc = 0.0;
        for (int k = 1; k <= i; ++k) acc += ((alpha + 1.0) * k - i) * G.c[k] * H.c[i - k];
        H.c[i] = acc / i;
    }
    return H;
}

std::vector<DotIdentity> frenet_reduce(const ArcFrame& frame, int i) {
    const double kap = frame.kappa(i);
    if (!(kap > 1e-10)) throw std::domain_error("frenet_reduce: curvature vanishes at sample");
    const double kp = frame.kappa_prime(i);
    const double tau = frame.tau(i).value();
    auto d = [&](int p, int q) { return dot(frame.derivative(i, p), frame.derivative(i, q)); };
    return {
        {2, 2, d(2, 2), kap * kap},
        {1, 3, d(1, 3), -kap * kap},
        {2, 3, d(2, 3), kap * kp},
        {3, 3, d(3, 3), kap * kap * kap * kap + kp * kp + kap * kap * tau * tau},
        {1, 4, d(1, 4), -3.0 * kap * kp},
    };
}

} // namespace knotbeta
