#pragma once

#include <array>
#include <string>
#include <vector>

#include "knotbeta/vec3.hpp"

namespace knotbeta {

/// One coordinate of a closed trigonometric-polynomial curve:
/// f(t) = a[0] + sum_{k>=1} (a[k] cos kt + b[k] sin kt).
struct FourierCoord {
    std::vector<double> a; // a[0] is the constant term
    std::vector<double> b; // b[0] unused, kept for aligned indexing

    double eval(double t, int deriv = 0) const;
};

struct FourierSpec {
    FourierCoord x, y, z;
};

/// gamma(t) = ((R + r cos qt) cos pt, (R + r cos qt) sin pt, r sin qt).
struct TorusSpec {
    int p = 2, q = 3;
    double R = 2.0, r = 0.5;
};

struct PolygonSpec {
    std::vector<Vec3> vertices;
};

class Knot {
public:
    enum class Kind { Fourier, Torus, Polygon };

    /// Empty placeholder; real knots come from the validated make_knot
    /// constructors below.
    Knot() = default;

    Kind kind() const { return kind_; }
    bool smooth() const { return kind_ != Kind::Polygon; }

    /// Coefficient form of a smooth knot (torus presets are lowered exactly).
    const FourierSpec& fourier() const { return fourier_; }
    const TorusSpec& torus() const { return torus_; }
    const std::vector<Vec3>& vertices() const { return polygon_.vertices; }

    Vec3 position(double t) const;
    Vec3 derivative(double t, int order) const;
    double speed(double t) const { return norm(derivative(t, 1)); }

    std::string name;

    friend Knot make_knot(const FourierSpec& spec);
    friend Knot make_knot(const TorusSpec& spec);
    friend Knot make_knot(const PolygonSpec& spec);

private:
    Kind kind_ = Kind::Fourier;
    FourierSpec fourier_;
    TorusSpec torus_;
    PolygonSpec polygon_;
};

/// Validated constructors. Smooth variants reject curves whose speed is not
/// bounded away from zero (checked on a fine grid); polygons need at least
/// three pairwise-distinct consecutive vertices.
Knot make_knot(const FourierSpec& spec);
Knot make_knot(const TorusSpec& spec);
Knot make_knot(const PolygonSpec& spec);

/// Round circle of the given radius in the xy-plane.
Knot make_circle(double radius);

/// Axis-aligned ellipse with semi-axes (a, b) in the xy-plane.
Knot make_ellipse(double a, double b);

/// The curve rotated/translated/scaled as a rigid+scaling motion applied to
/// every evaluated point. Returns a fourier knot with transformed coefficients.
Knot transformed(const Knot& k, const std::array<Vec3, 3>& rot, const Vec3& shift, double scale);

} // namespace knotbeta
