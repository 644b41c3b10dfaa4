#pragma once

#include <optional>
#include <vector>

#include "knotbeta/fft.hpp"
#include "knotbeta/knot.hpp"
#include "knotbeta/vec3.hpp"

namespace knotbeta {

struct FrenetData {
    double kappa = 0.0;
    std::optional<double> tau; // undefined where curvature vanishes
    double kappa_prime = 0.0;
};

/// Uniform arc-length samples of a smooth knot with spectral derivatives.
///
/// The exposed grid has N samples x_i = i*l/N. All spectral work (Fourier
/// coefficients, derivatives, interpolation) happens on an internal grid of
/// M >= max(N, 512) points, so the accuracy of derivatives and of evaluation
/// at arbitrary arc length does not degrade when a caller asks for few
/// samples.
class ArcFrame {
public:
    /// Resample a smooth knot to N uniform arc-length nodes with derivatives
    /// up to order D. N must be a power of two >= 64.
    ArcFrame(const Knot& knot, int N, int D = 10);

    int samples() const { return n_; }
    int max_order() const { return dmax_; }
    double length() const { return length_; }
    double x(int i) const { return length_ * i / n_; }

    const Vec3& position(int i) const { return deriv_[0][i]; }
    /// Arc-length derivative gamma^(d)(x_i), 1 <= d <= max_order().
    const Vec3& derivative(int i, int d) const { return deriv_[d][i]; }

    double kappa(int i) const { return kappa_[i]; }
    std::optional<double> tau(int i) const { return tau_defined_[i] ? std::optional(tau_[i]) : std::nullopt; }
    double kappa_prime(int i) const { return kappa_prime_[i]; }

    FrenetData frenet(int i) const;

    /// gamma(x_i + h) - gamma(x_i) for every exposed sample, one shift h.
    /// Assembled in Fourier space with the exact phase-difference factor, so
    /// the relative accuracy does not degrade as h -> 0.
    std::vector<Vec3> chord_table(double h) const;

    /// gamma at one arbitrary arc length (trigonometric interpolation).
    Vec3 position_at(double x) const;

    /// Largest strip half-width eps <= eps_max with
    /// max_{x,|h|<=eps} | ||chord||^2/h^2 - 1 | <= 0.5.
    double chord_series_margin_scan(double eps_max) const;

    /// The underlying knot (kept for parametric re-evaluation in oracles).
    const Knot& knot() const { return knot_; }

private:
    void build_spectrum(const Knot& knot, int D);

    Knot knot_;
    int n_ = 0;
    int m_ = 0; // internal spectral grid size
    int dmax_ = 0;
    double length_ = 0.0;
    std::vector<std::vector<Vec3>> deriv_; // deriv_[d][i], d = 0..dmax_
    std::vector<double> kappa_, tau_, kappa_prime_;
    std::vector<char> tau_defined_;
    std::array<std::vector<cd>, 3> spectrum_; // filtered coefficients on the M-grid
};

/// Total length by quadrature of |c'(t)| (spectral trapezoid, refined until
/// stable to 1e-14 relative).
double arc_length(const Knot& knot);

} // namespace knotbeta
