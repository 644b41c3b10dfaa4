#pragma once

#include <complex>
#include <vector>

#include "knotbeta/knot.hpp"
#include "knotbeta/special_fn.hpp"

namespace knotbeta {

/// Edge/vertex data of a closed polygon. Edge j runs v_j -> v_{j+1}; the
/// interior angle phi at a vertex is measured between the directions toward
/// the two neighboring vertices, so phi = pi marks a straight (fictitious)
/// vertex and phi -> 0 a fold-back spike (rejected).
struct PolygonGeometry {
    std::vector<Vec3> vertices;
    std::vector<Vec3> edge_dir;        // unit directions
    std::vector<double> edge_len;
    std::vector<double> vertex_angle;  // angle at the head vertex of edge j
    double length = 0.0;

    int sides() const { return static_cast<int>(vertices.size()); }
};

PolygonGeometry polygon_geometry(const Knot& poly);

/// Same-edge contribution: 2 a^{s+2} / ((s+1)(s+2)), simple poles at -1, -2.
MeroValue edge_self(double a, std::complex<double> s, double guard = kDefaultGuardRadius);

/// Adjacent-edge contribution in polar form over the spanned parallelogram:
/// sin(phi)^{-1} (s+2)^{-1} int_0^{pi-phi} rho(theta)^{s+2} dtheta with the
/// boundary radius rho split at the diagonal direction; phi = pi degenerates
/// to the collinear closed form. Simple pole at -2 only.
MeroValue adjacent_pair(double a, double b, double phi, std::complex<double> s,
                        double guard = kDefaultGuardRadius);

/// Residue of adjacent_pair at s = -2: (pi - phi)/sin(phi), with the limit
/// value 1 at phi = pi.
double adjacent_pair_residue(double phi);

/// Beta function of a polygonal knot on Re(s) > -3, off the guard radii of
/// the poles -1 and -2. Decomposed into ordered edge pairs: self terms,
/// doubled adjacent terms, and smooth quadrature for non-adjacent pairs.
MeroValue polygon_beta(const Knot& poly, std::complex<double> s,
                       double guard = kDefaultGuardRadius);

struct PolygonResidues {
    double at_minus_1 = 0.0; // sum 2 a_j = 2 l
    double at_minus_2 = 0.0; // -2n + 2 sum (pi - phi_j)/sin(phi_j)
    double prop21_printed_minus_1 = 0.0; // the published l(K) value, for display
};
PolygonResidues polygon_residues(const Knot& poly);

/// Insert a fictitious vertex at the given fraction of an edge. The point
/// set is unchanged; the new vertex has angle pi.
Knot split_edge(const Knot& poly, int edge, double fraction);

} // namespace knotbeta
