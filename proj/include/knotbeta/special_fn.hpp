#pragma once

#include <complex>
#include <limits>
#include <optional>

namespace knotbeta {

/// Evaluation result of a meromorphic function. When the point lies within
/// the guard radius of a pole the value is withheld (NaN) and unreliable()
/// reports true; callers wanting pole data must use the residue operations.
struct MeroValue {
    std::complex<double> value{std::numeric_limits<double>::quiet_NaN(), 0.0};
    std::optional<double> nearest_pole;
    double distance_to_pole = std::numeric_limits<double>::infinity();
    double error_estimate = 0.0;
    double guard_radius = 1e-3;

    bool reliable() const { return distance_to_pole >= guard_radius; }
};

constexpr double kDefaultGuardRadius = 1e-3;

/// Gamma function (Lanczos approximation with reflection for Re z < 0.5).
/// Relative accuracy ~1e-13 away from poles.
std::complex<double> gamma_fn(std::complex<double> z);
double gamma_fn(double x);

/// Closed-form beta function of a round circle:
///   B(s) = radius^{s+2} 2^{s+2} pi^{3/2} Gamma((s+1)/2) / Gamma(s/2 + 1),
/// meromorphic with simple poles at s = -1, -3, -5, ...
MeroValue circle_beta(std::complex<double> s, double radius = 1.0,
                      double guard = kDefaultGuardRadius);

/// Residue of circle_beta at s = -2j-1, from Res_{z=-j} Gamma = (-1)^j / j!
/// (factor 2 from the substitution z = (s+1)/2).
double circle_residue(int j, double radius = 1.0);

/// Relative defect of the functional equation B(s) = 4 (s-1)/s B(s-2) in the
/// closed form.
double functional_equation_defect(std::complex<double> s, double radius = 1.0);

/// Distance from s to the odd negative integers {-1, -3, -5, ...}.
double distance_to_odd_poles(std::complex<double> s);

} // namespace knotbeta
