#include "knotbeta/special_fn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace knotbeta {

namespace {

using cplx = std::complex<double>;

// Lanczos coefficients, g = 607/128, 15 terms (Godfrey's tabulation).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

cplx lanczos_positive(cplx z) {
    // valid for Re z >= 0.5; classic product form
    cplx sum = kLanczos[0];
    for (int k = 1; k < 15; ++k) sum += kLanczos[k] / (z - 1.0 + static_cast<double>(k));
    const cplx t = z - 0.5 + kLanczosG;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z - 0.5) * std::exp(-t) * sum;
}

} // namespace

std::complex<double> gamma_fn(std::complex<double> z) {
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::numbers::pi / (std::sin(std::numbers::pi * z) * lanczos_positive(1.0 - z));
    }
    return lanczos_positive(z);
}

double gamma_fn(double x) {
    const cplx g = gamma_fn(cplx(x, 0.0));
    return g.real();
}

double distance_to_odd_poles(std::complex<double> s) {
    double best = std::numeric_limits<double>::infinity();
    // nearest odd negative integer to Re(s)
    const double re = s.real();
    const int j0 = std::max(0, static_cast<int>(std::floor((-re - 1.0) / 2.0)));
    for (int j = std::max(0, j0 - 1); j <= j0 + 1; ++j)
        best = std::min(best, std::abs(s - cplx(-2.0 * j - 1.0, 0.0)));
    return best;
}

MeroValue circle_beta(std::complex<double> s, double radius, double guard) {
    if (!(radius > 0.0)) throw std::invalid_argument("circle_beta: radius must be positive");
    MeroValue out;
    out.guard_radius = guard;
    out.distance_to_pole = distance_to_odd_poles(s);
    const double re = s.real();
    if (re < -1.0) {
        const int j = static_cast<int>(std::lround((-re - 1.0) / 2.0));
        out.nearest_pole = -2.0 * std::max(0, j) - 1.0;
    } else {
        out.nearest_pole = -1.0;
    }
    if (!out.reliable()) return out;

    const cplx val = std::pow(radius, s + 2.0) * std::pow(2.0, s + 2.0) *
                     std::pow(std::numbers::pi, 1.5) * gamma_fn((s + 1.0) / 2.0) /
                     gamma_fn(s / 2.0 + 1.0);
    out.value = val;
    out.error_estimate = 1e-13 * std::abs(val);
    return out;
}

double circle_residue(int j, double radius) {
    if (j < 0) throw std::invalid_argument("circle_residue: j must be >= 0");
    const double s = -2.0 * j - 1.0;
    // Res Gamma((s+1)/2) at s = -2j-1 is 2 (-1)^j / j!
    double fact = 1.0;
    for (int k = 2; k <= j; ++k) fact *= k;
    const double gamma_res = 2.0 * (j % 2 == 0 ? 1.0 : -1.0) / fact;
    return std::pow(radius, s + 2.0) * std::pow(2.0, s + 2.0) *
           std::pow(std::numbers::pi, 1.5) * gamma_res / gamma_fn(s / 2.0 + 1.0);
}

double functional_equation_defect(std::complex<double> s, double radius) {
    if (std::abs(s) < 1e-12) throw std::domain_error("functional_equation_defect: s = 0");
    const MeroValue lhs = circle_beta(s, radius);
    const MeroValue rhs = circle_beta(s - 2.0, radius);
    if (!lhs.reliable() || !rhs.reliable())
        throw std::domain_error("functional_equation_defect: pole proximity");
    if (std::abs(lhs.value) < 1e-300)
        throw std::domain_error("functional_equation_defect: B(s) vanishes");
    const cplx pred = 4.0 * (s - 1.0) / s * rhs.value;
    return std::abs(lhs.value - pred) / std::abs(lhs.value);
}

} // namespace knotbeta
