#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

namespace knotbeta {

/// Differential polynomials in the Frenet invariants: monomials are products
/// of powers of kappa^(d) and tau^(d), d = 0..kMaxDeriv.
class FrenetPoly {
public:
    static constexpr int kMaxDeriv = 6;
    // exponents of kappa, kappa', .., then tau, tau', ..
    using Monomial = std::array<std::uint8_t, 2 * (kMaxDeriv + 1)>;

    FrenetPoly() = default;
    static FrenetPoly constant(double c);
    static FrenetPoly kappa(int deriv = 0);
    static FrenetPoly tau(int deriv = 0);

    FrenetPoly& operator+=(const FrenetPoly& o);
    FrenetPoly& operator-=(const FrenetPoly& o);
    FrenetPoly& operator*=(double c);
    friend FrenetPoly operator+(FrenetPoly a, const FrenetPoly& b) { return a += b; }
    friend FrenetPoly operator-(FrenetPoly a, const FrenetPoly& b) { return a -= b; }
    friend FrenetPoly operator*(FrenetPoly a, double c) { return a *= c; }
    friend FrenetPoly operator*(double c, FrenetPoly a) { return a *= c; }
    friend FrenetPoly operator*(const FrenetPoly& a, const FrenetPoly& b);

    /// d/dx by the product rule (bumps derivative orders).
    FrenetPoly derivative() const;

    /// Evaluate with kappa-derivatives and tau-derivatives supplied by index.
    double eval(const std::array<double, kMaxDeriv + 1>& kappa_derivs,
                const std::array<double, kMaxDeriv + 1>& tau_derivs) const;

    /// Coefficient of an exact monomial (exponent list pairs (var, deriv, power)).
    double coeff(const Monomial& m) const;

    bool empty() const { return terms_.empty(); }
    const std::map<Monomial, double>& terms() const { return terms_; }

    std::string str() const;

private:
    void prune();
    std::map<Monomial, double> terms_;
};

/// gamma^(order) expressed in the Frenet frame (T, N, B): three differential
/// polynomials, starting from gamma' = T and applying the Frenet equations.
struct FrenetVector {
    FrenetPoly t, n, b;
};
FrenetVector frenet_derivative_vector(int order);

/// gamma^(p) . gamma^(q) as a differential polynomial.
FrenetPoly frenet_dot(int p, int q);

/// Chord-square series coefficient f_m as a differential polynomial.
FrenetPoly frenet_chord_coefficient(int m);

/// Residue density P_j with residue at s = -2j-1 equal to int P_j dx:
/// P_j = 2 h_{2j}(-2j-1) with monomials containing kappa'' eliminated by
/// integration by parts over the closed curve (valid under the integral
/// only). Supported for j <= 2.
FrenetPoly residue_density(int j);

/// Purely-pointwise variant before integration by parts (may contain kappa'').
FrenetPoly residue_density_pointwise(int j);

} // namespace knotbeta
