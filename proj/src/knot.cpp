#include "knotbeta/knot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace knotbeta {

double FourierCoord::eval(double t, int deriv) const {
    // d/dt cos(kt) cycles through -k sin, -k^2 cos, k^3 sin, k^4 cos, ...
    double acc = 0.0;
    if (deriv == 0 && !a.empty()) acc += a[0];
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double kp = std::pow(kk, deriv);
        const double ca = k < a.size() ? a[k] : 0.0;
        const double cb = k < b.size() ? b[k] : 0.0;
        const double c = std::cos(kk * t), s = std::sin(kk * t);
        switch (deriv % 4) {
            case 0: acc += kp * (ca * c + cb * s); break;
            case 1: acc += kp * (-ca * s + cb * c); break;
            case 2: acc += kp * (-ca * c - cb * s); break;
            default: acc += kp * (ca * s - cb * c); break;
        }
    }
    return acc;
}

Vec3 Knot::position(double t) const { return derivative(t, 0); }

Vec3 Knot::derivative(double t, int order) const {
    if (kind_ == Kind::Polygon) throw std::logic_error("derivative: polygon knots are not smooth");
    return {fourier_.x.eval(t, order), fourier_.y.eval(t, order), fourier_.z.eval(t, order)};
}

namespace {

void check_speed(const Knot& k) {
    constexpr int grid = 4096;
    double vmin = std::numeric_limits<double>::max();
    double vmax = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double v = k.speed(2.0 * std::numbers::pi * i / grid);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    if (!(vmax > 0.0) || vmin < 1e-6 * vmax)
        throw std::invalid_argument("make_knot: curve speed not bounded away from zero");
}

void add_mode(std::vector<double>& v, int k, double c) {
    if (k < 0) return;
    if (static_cast<std::size_t>(k) >= v.size()) v.resize(k + 1, 0.0);
    v[k] += c;
}

} // namespace

Knot make_knot(const FourierSpec& spec) {
    Knot k;
    k.kind_ = Knot::Kind::Fourier;
    k.fourier_ = spec;
    check_speed(k);
    return k;
}

Knot make_knot(const TorusSpec& spec) {
    if (spec.p < 1 || spec.q < 1) throw std::invalid_argument("make_knot: torus winding numbers must be positive");
    if (!(spec.R > spec.r) || !(spec.r > 0.0))
        throw std::invalid_argument("make_knot: torus preset requires R > r > 0");
    // (R + r cos qt) cos pt = R cos pt + r/2 cos((p+q)t) + r/2 cos(|p-q|t)
    // (R + r cos qt) sin pt = R sin pt + r/2 sin((p+q)t) + sgn(p-q) r/2 sin(|p-q|t)
    FourierSpec f;
    const int p = spec.p, q = spec.q;
    add_mode(f.x.a, p, spec.R);
    add_mode(f.x.a, p + q, 0.5 * spec.r);
    add_mode(f.x.a, std::abs(p - q), 0.5 * spec.r);
    add_mode(f.y.b, p, spec.R);
    add_mode(f.y.b, p + q, 0.5 * spec.r);
    if (p != q) add_mode(f.y.b, std::abs(p - q), (p > q ? 0.5 : -0.5) * spec.r);
    add_mode(f.z.b, q, spec.r);
    Knot k;
    k.kind_ = Knot::Kind::Torus;
    k.fourier_ = f;
    k.torus_ = spec;
    check_speed(k);
    return k;
}

Knot make_knot(const PolygonSpec& spec) {
    const auto& v = spec.vertices;
    if (v.size() < 3) throw std::invalid_argument("make_knot: polygon needs at least 3 vertices");
    double scale = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) scale = std::max(scale, norm(v[i]));
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec3 d = v[(i + 1) % v.size()] - v[i];
        if (norm(d) <= 1e-12 * std::max(1.0, scale))
            throw std::invalid_argument("make_knot: consecutive polygon vertices must be distinct");
    }
    Knot k;
    k.kind_ = Knot::Kind::Polygon;
    k.polygon_ = spec;
    return k;
}

Knot make_circle(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("make_circle: radius must be positive");
    FourierSpec f;
    add_mode(f.x.a, 1, radius);
    add_mode(f.y.b, 1, radius);
    Knot k = make_knot(f);
    k.name = "circle";
    return k;
}

Knot make_ellipse(double a, double b) {
    FourierSpec f;
    add_mode(f.x.a, 1, a);
    add_mode(f.y.b, 1, b);
    Knot k = make_knot(f);
    k.name = "ellipse";
    return k;
}

Knot transformed(const Knot& k, const std::array<Vec3, 3>& rot, const Vec3& shift, double scale) {
    if (k.kind() == Knot::Kind::Polygon) {
        PolygonSpec p;
        for (const Vec3& v : k.vertices()) {
            const Vec3 sv = scale * v;
            p.vertices.push_back(Vec3{dot(rot[0], sv), dot(rot[1], sv), dot(rot[2], sv)} + shift);
        }
        return make_knot(p);
    }
    const FourierSpec& f = k.fourier();
    const std::size_t n = std::max({f.x.a.size(), f.y.a.size(), f.z.a.size(),
                                    f.x.b.size(), f.y.b.size(), f.z.b.size()});
    FourierSpec out;
    auto get = [](const std::vector<double>& v, std::size_t i) { return i < v.size() ? v[i] : 0.0; };
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 ai = scale * Vec3{get(f.x.a, i), get(f.y.a, i), get(f.z.a, i)};
        const Vec3 bi = scale * Vec3{get(f.x.b, i), get(f.y.b, i), get(f.z.b, i)};
        Vec3 ra{dot(rot[0], ai), dot(rot[1], ai), dot(rot[2], ai)};
        const Vec3 rb{dot(rot[0], bi), dot(rot[1], bi), dot(rot[2], bi)};
        if (i == 0) ra += shift;
        add_mode(out.x.a, static_cast<int>(i), ra.x);
        add_mode(out.y.a, static_cast<int>(i), ra.y);
        add_mode(out.z.a, static_cast<int>(i), ra.z);
        add_mode(out.x.b, static_cast<int>(i), rb.x);
        add_mode(out.y.b, static_cast<int>(i), rb.y);
        add_mode(out.z.b, static_cast<int>(i), rb.z);
    }
    return make_knot(out);
}

} // namespace knotbeta
