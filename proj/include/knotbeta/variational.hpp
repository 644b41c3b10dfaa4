#pragma once

#include <vector>

#include "knotbeta/arc_frame.hpp"

namespace knotbeta {

/// Exponent convention of the gradient kernel. Primary carries the
/// unnormalized chord vector against chord^{s-2}, which is the actual
/// derivative of chord^s and is what the finite-difference oracle confirms;
/// Printed reproduces the published chord^{s-1} kernel for comparison.
enum class GradientConvention { Primary, Printed };

struct GradientField {
    double s = 0.0;
    GradientConvention convention = GradientConvention::Primary;
    std::vector<Vec3> g; // one vector per frame sample
};

struct VariationalConfig {
    GradientConvention convention = GradientConvention::Primary;
    int gauss = 16;
    double panel_ratio = 1.5;
};

/// Gradient field of B_s along the knot, s > 1:
///   g(x) = 2 s int chord(x,y)^{s-2} (gamma(x)-gamma(y)) dy.
GradientField gradient_field(const ArcFrame& frame, double s,
                             const VariationalConfig& cfg = {});

/// Poisson bracket of B_s and B_u by the triple-integral kernel route,
/// the expansion of -l^{-2} int det(gamma', dB_s, dB_u) dx:
///   -4 s u l^{-2} iiint ch_xy^{s-2} ch_xz^{u-2}
///        det(gamma'(x), gamma(x)-gamma(y), gamma(x)-gamma(z)) dx dy dz
/// evaluated on the frame grid with the partial diagonals excluded.
/// Requires s, u > -2.
double poisson_bracket(const ArcFrame& frame, double s, double u,
                       const VariationalConfig& cfg = {});

/// The same bracket contracted from precomputed gradient fields; defined for
/// s, u > 1 and used as the independent cross-check of the kernel route.
double poisson_bracket_from_gradients(const ArcFrame& frame, double s, double u,
                                      const VariationalConfig& cfg = {});

/// Residue-in-s of the bracket at s = -1, estimated from (s+1)-weighted
/// evaluations at -1 +- delta. Zero iff the length functional Poisson
/// commutes with B_u.
double bracket_length_commutation(const ArcFrame& frame, double u, double delta = 0.05,
                                  const VariationalConfig& cfg = {});

struct BernsteinResult {
    double lhs = 0.0; // operator route: Hessian kernel contracted with w (x) w
    double rhs = 0.0; // s(s-1) B_{s-2} by convergent-range quadrature
};

/// Operator identity P B_s = s(s-1) B_{s-2} for s > 2. The left side
/// integrates the chord-Hessian contraction
///   w^T [ s c^{s-2} I + s(s-2) c^{s-4} v v^T ] w,  w = v / ||v||,
/// over K x K; the right side uses beta_direct at s - 2.
BernsteinResult bernstein_apply(const ArcFrame& frame, double s);

/// Mixed second difference of the fixed-weight discrete double sum in the
/// directions (w at sample i, -w at sample j), normalized to estimate the
/// kernel contraction s(s-1) chord^{s-2} at that pair.
double discrete_hessian_contraction(const ArcFrame& frame, int i, int j, double s,
                                    double step = 1e-4);

struct GelfandShilovResult {
    double lhs = 0.0; // (1/4) FD-Laplacian of f^s at z
    double rhs = 0.0; // s(s - 1 + n/2) f^{s-1}
};

/// Quadratic Bernstein-Sato example in R^n: f = sum z_i^2,
/// P = (1/4) sum d^2/dz_i^2, P f^s = s(s-1+n/2) f^{s-1}.
GelfandShilovResult gelfand_shilov_check(const std::vector<double>& z, double s);

} // namespace knotbeta
