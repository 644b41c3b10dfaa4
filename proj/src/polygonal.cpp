#include "knotbeta/polygonal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "knotbeta/quadrature.hpp"

namespace knotbeta {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kFlatAngleEps = 1e-9;

double dist_to_polygon_poles(cplx s) {
    return std::min(std::abs(s - cplx(-1.0, 0.0)), std::abs(s - cplx(-2.0, 0.0)));
}

/// Minimal distance between two closed segments.
double segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1) {
    const Vec3 u = p1 - p0, v = q1 - q0, w = p0 - q0;
    const double a = dot(u, u), b = dot(u, v), c = dot(v, v), d = dot(u, w), e = dot(v, w);
    const double den = a * c - b * b;
    double sc, tc;
    if (den > 1e-14 * a * c) {
        sc = std::clamp((b * e - c * d) / den, 0.0, 1.0);
    } else {
        sc = 0.0;
    }
    tc = c > 0.0 ? std::clamp((b * sc + e) / c, 0.0, 1.0) : 0.0;
    sc = a > 0.0 ? std::clamp((b * tc - d) / a, 0.0, 1.0) : 0.0;
    return norm(p0 + sc * u - (q0 + tc * v));
}

/// Smooth double integral over a non-adjacent edge pair, panel counts graded
/// by the pair separation and refined until stable.
cplx nonadjacent_pair(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1, cplx s) {
    const double la = norm(p1 - p0), lb = norm(q1 - q0);
    const double dmin = segment_distance(p0, p1, q0, q1);
    int panels = std::clamp(static_cast<int>(std::ceil(2.0 * std::max(la, lb) / std::max(dmin, 1e-12))),
                            2, 48);
    cplx prev = 0.0;
    for (int pass = 0;; ++pass) {
        const auto nodes = panel_nodes(linear_edges(0.0, 1.0, panels), 12);
        cplx acc = 0.0;
        for (std::size_t i = 0; i < nodes.x.size(); ++i) {
            const Vec3 A = p0 + nodes.x[i] * (p1 - p0);
            cplx row = 0.0;
            for (std::size_t k = 0; k < nodes.x.size(); ++k) {
                const double d = norm(A - (q0 + nodes.x[k] * (q1 - q0)));
                row += nodes.w[k] * std::pow(cplx(d, 0.0), s);
            }
            acc += nodes.w[i] * row;
        }
        acc *= la * lb;
        if (pass > 0 && std::abs(acc - prev) <= 1e-12 * (1.0 + std::abs(acc))) return acc;
        if (pass >= 4) return acc;
        prev = acc;
        panels *= 2;
    }
}

} // namespace

PolygonGeometry polygon_geometry(const Knot& poly) {
    if (poly.kind() != Knot::Kind::Polygon)
        throw std::invalid_argument("polygon_geometry: not a polygon knot");
    PolygonGeometry g;
    g.vertices = poly.vertices();
    const int n = g.sides();
    g.edge_dir.resize(n);
    g.edge_len.resize(n);
    g.vertex_angle.resize(n);
    for (int j = 0; j < n; ++j) {
        const Vec3 d = g.vertices[(j + 1) % n] - g.vertices[j];
        g.edge_len[j] = norm(d);
        g.edge_dir[j] = normalized(d);
        g.length += g.edge_len[j];
    }
    for (int j = 0; j < n; ++j) {
        // angle at the vertex shared by edge j and edge j+1
        const Vec3 u = -1.0 * g.edge_dir[j];           // toward the previous vertex
        const Vec3 v = g.edge_dir[(j + 1) % n];        // toward the next vertex
        const double c = std::clamp(dot(u, v), -1.0, 1.0);
        const double phi = std::acos(c);
        if (phi < kFlatAngleEps)
            throw std::invalid_argument("polygon_geometry: fold-back vertex (angle ~ 0)");
        g.vertex_angle[j] = phi;
    }
    return g;
}

MeroValue edge_self(double a, std::complex<double> s, double guard) {
    if (!(a > 0.0)) throw std::invalid_argument("edge_self: edge length must be positive");
    MeroValue out;
    out.guard_radius = guard;
    out.distance_to_pole = dist_to_polygon_poles(s);
    out.nearest_pole = std::abs(s - cplx(-1.0, 0.0)) <= std::abs(s - cplx(-2.0, 0.0)) ? -1.0 : -2.0;
    if (!out.reliable()) return out;
    out.value = 2.0 * std::pow(cplx(a, 0.0), s + 2.0) / ((s + 1.0) * (s + 2.0));
    out.error_estimate = 1e-14 * std::abs(out.value);
    return out;
}

double adjacent_pair_residue(double phi) {
    const double d = kPi - phi;
    if (d < 1e-8) return 1.0;
    return d / std::sin(phi);
}

MeroValue adjacent_pair(double a, double b, double phi, std::complex<double> s, double guard) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("adjacent_pair: lengths must be positive");
    if (!(phi > 0.0) || phi > kPi) throw std::invalid_argument("adjacent_pair: angle must lie in (0, pi]");
    MeroValue out;
    out.guard_radius = guard;
    out.nearest_pole = -2.0;
    out.distance_to_pole = std::abs(s - cplx(-2.0, 0.0));
    if (!out.reliable()) return out;

    if (phi > kPi - kFlatAngleEps) {
        // collinear edges: int_0^a int_0^b (alpha+beta)^s
        out.value = (std::pow(cplx(a + b, 0.0), s + 2.0) - std::pow(cplx(a, 0.0), s + 2.0) -
                     std::pow(cplx(b, 0.0), s + 2.0)) /
                    ((s + 1.0) * (s + 2.0));
        out.error_estimate = 1e-14 * std::abs(out.value);
        return out;
    }

    const double sphi = std::sin(phi);
    // boundary radius of the parallelogram spanned by a*u and -b*v, split at
    // the diagonal direction theta_d = angle of (a*u - b*v)
    const double theta_d = std::atan2(b * sphi, a - b * std::cos(phi));
    const cplx expo = s + 2.0;
    auto seg = [&](double lo, double hi, auto rho) {
        if (hi <= lo) return cplx(0.0);
        cplx re_acc(adaptive_gauss([&](double th) { return std::pow(rho(th), expo).real(); }, lo, hi,
                                   1e-13, 1e-300),
                    0.0);
        if (s.imag() != 0.0) {
            re_acc += cplx(0.0, adaptive_gauss(
                                    [&](double th) { return std::pow(rho(th), expo).imag(); }, lo,
                                    hi, 1e-13, 1e-300));
        }
        return re_acc;
    };
    auto rho1 = [&](double th) { return cplx(a * sphi / std::sin(th + phi), 0.0); };
    auto rho2 = [&](double th) { return cplx(b * sphi / std::sin(th), 0.0); };
    const cplx theta_integral = seg(0.0, theta_d, rho1) + seg(theta_d, kPi - phi, rho2);
    out.value = theta_integral / (sphi * (s + 2.0));
    out.error_estimate = 1e-12 * std::abs(out.value);
    return out;
}

MeroValue polygon_beta(const Knot& poly, std::complex<double> s, double guard) {
    const PolygonGeometry g = polygon_geometry(poly);
    const int n = g.sides();
    if (s.real() <= -3.0)
        throw std::domain_error("polygon_beta: continuation implemented on Re(s) > -3 only");

    MeroValue out;
    out.guard_radius = guard;
    out.distance_to_pole = dist_to_polygon_poles(s);
    out.nearest_pole = std::abs(s - cplx(-1.0, 0.0)) <= std::abs(s - cplx(-2.0, 0.0)) ? -1.0 : -2.0;
    if (!out.reliable()) return out;

    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) acc += edge_self(g.edge_len[j], s, guard).value;
    for (int j = 0; j < n; ++j) {
        const int k = (j + 1) % n;
        acc += 2.0 * adjacent_pair(g.edge_len[j], g.edge_len[k], g.vertex_angle[j], s, guard).value;
    }
    double err = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            const bool adjacent = (k == j + 1) || (j == 0 && k == n - 1);
            if (adjacent) continue;
            const Vec3 &p0 = g.vertices[j], &p1 = g.vertices[(j + 1) % n];
            const Vec3 &q0 = g.vertices[k], &q1 = g.vertices[(k + 1) % n];
            const double dmin = segment_distance(p0, p1, q0, q1);
            if (dmin < 1e-9 * g.length)
                throw std::domain_error("polygon_beta: non-adjacent edges touch; integral diverges");
            acc += 2.0 * nonadjacent_pair(p0, p1, q0, q1, s);
            err += 1e-12 * std::abs(acc);
        }
    }
    out.value = acc;
    out.error_estimate = std::max(err, 1e-13 * std::abs(acc));
    return out;
}

PolygonResidues polygon_residues(const Knot& poly) {
    const PolygonGeometry g = polygon_geometry(poly);
    PolygonResidues res;
    res.at_minus_1 = 2.0 * g.length;
    res.prop21_printed_minus_1 = g.length;
    double corner = 0.0;
    for (const double phi : g.vertex_angle) corner += adjacent_pair_residue(phi);
    res.at_minus_2 = -2.0 * g.sides() + 2.0 * corner;
    if (!(res.at_minus_1 > 0.0) || !(res.at_minus_2 > 0.0))
        throw std::logic_error("polygon_residues: residues must be positive");
    return res;
}

Knot split_edge(const Knot& poly, int edge, double fraction) {
    if (!(fraction > 0.0) || !(fraction < 1.0))
        throw std::invalid_argument("split_edge: fraction must lie in (0,1)");
    const auto& v = poly.vertices();
    const int n = static_cast<int>(v.size());
    if (edge < 0 || edge >= n) throw std::invalid_argument("split_edge: edge index out of range");
    PolygonSpec spec;
    for (int i = 0; i < n; ++i) {
        spec.vertices.push_back(v[i]);
        if (i == edge) spec.vertices.push_back(v[i] + fraction * (v[(i + 1) % n] - v[i]));
    }
    return make_knot(spec);
}

} // namespace knotbeta
