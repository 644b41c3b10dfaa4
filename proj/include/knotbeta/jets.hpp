#pragma once

#include <vector>

#include "knotbeta/arc_frame.hpp"
#include "knotbeta/polynomial.hpp"

namespace knotbeta {

/// Truncated power series in the chord offset h. Arithmetic never extends
/// the truncation order: a series of order r stores coefficients c_0..c_r.
template <class Coef>
struct HSeries {
    int order = 0;
    std::vector<Coef> c; // size order + 1

    explicit HSeries(int r = 0) : order(r), c(r + 1) {}
};

/// Chord-square series at sample i:
///   ||gamma(x_i + h) - gamma(x_i)||^2 / h^2 = 1 + sum_{m=1..r} f_m h^m,
/// with f_m = sum_{p+q=m+2, p,q>=1} gamma^(p).gamma^(q) / (p! q!).
/// Requires frame.max_order() >= r + 1.
HSeries<double> chord_series(const ArcFrame& frame, int i, int r);

/// (1 + a_1 h + ... )^{s/2} with the exponent carried as a polynomial
/// variable: returns H with H.c[i] = h_i(s), deg_s h_i <= i. Requires
/// G.c[0] == 1.
HSeries<SPoly> series_pow(const HSeries<double>& G);

/// Same power series at a fixed numeric exponent alpha (not s/2-scaled).
HSeries<double> series_pow_at(const HSeries<double>& G, double alpha);

/// Scalar-product reduction table through total order 4: each entry pairs the
/// numeric dot product gamma^(p).gamma^(q) at sample i with its expression in
/// (kappa, tau, kappa') evaluated from the same frame.
struct DotIdentity {
    int p = 0, q = 0;
    double dot_value = 0.0;
    double frenet_value = 0.0;
};
std::vector<DotIdentity> frenet_reduce(const ArcFrame& frame, int i);

} // namespace knotbeta
