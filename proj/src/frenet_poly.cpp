#include "knotbeta/frenet_poly.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace knotbeta {

namespace {
constexpr double kCoeffFloor = 1e-14;
constexpr int kD = FrenetPoly::kMaxDeriv;
}

FrenetPoly FrenetPoly::constant(double c) {
    FrenetPoly p;
    if (c != 0.0) p.terms_[Monomial{}] = c;
    return p;
}

FrenetPoly FrenetPoly::kappa(int deriv) {
    if (deriv < 0 || deriv > kD) throw std::invalid_argument("FrenetPoly: derivative order");
    FrenetPoly p;
    Monomial m{};
    m[deriv] = 1;
    p.terms_[m] = 1.0;
    return p;
}

FrenetPoly FrenetPoly::tau(int deriv) {
    if (deriv < 0 || deriv > kD) throw std::invalid_argument("FrenetPoly: derivative order");
    FrenetPoly p;
    Monomial m{};
    m[kD + 1 + deriv] = 1;
    p.terms_[m] = 1.0;
    return p;
}

void FrenetPoly::prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = std::abs(it->second) < kCoeffFloor ? terms_.erase(it) : std::next(it);
}

FrenetPoly& FrenetPoly::operator+=(const FrenetPoly& o) {
    for (const auto& [m, c] : o.terms_) terms_[m] += c;
    prune();
    return *this;
}

FrenetPoly& FrenetPoly::operator-=(const FrenetPoly& o) {
    for (const auto& [m, c] : o.terms_) terms_[m] -= c;
    prune();
    return *this;
}

FrenetPoly& FrenetPoly::operator*=(double c) {
    for (auto& [m, v] : terms_) v *= c;
    prune();
    return *this;
}

FrenetPoly operator*(const FrenetPoly& a, const FrenetPoly& b) {
    FrenetPoly out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            FrenetPoly::Monomial m;
            for (std::size_t i = 0; i < m.size(); ++i) {
                const int e = ma[i] + mb[i];
                if (e > 255) throw std::overflow_error("FrenetPoly: exponent overflow");
                m[i] = static_cast<std::uint8_t>(e);
            }
            out.terms_[m] += ca * cb;
        }
    }
    out.prune();
    return out;
}

FrenetPoly FrenetPoly::derivative() const {
    FrenetPoly out;
    for (const auto& [m, c] : terms_) {
        for (std::size_t slot = 0; slot < m.size(); ++slot) {
            if (m[slot] == 0) continue;
            const int d = static_cast<int>(slot <= kD ? slot : slot - kD - 1);
            if (d + 1 > kD) throw std::overflow_error("FrenetPoly: derivative order exceeded");
            Monomial nm = m;
            nm[slot] -= 1;
            nm[slot + 1] += 1;
            out.terms_[nm] += c * m[slot];
        }
    }
    out.prune();
    return out;
}

double FrenetPoly::eval(const std::array<double, kD + 1>& kd,
                        const std::array<double, kD + 1>& td) const {
    double acc = 0.0;
    for (const auto& [m, c] : terms_) {
        double term = c;
        for (int i = 0; i <= kD; ++i) {
            for (int e = 0; e < m[i]; ++e) term *= kd[i];
            for (int e = 0; e < m[kD + 1 + i]; ++e) term *= td[i];
        }
        acc += term;
    }
    return acc;
}

double FrenetPoly::coeff(const Monomial& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? 0.0 : it->second;
}

std::string FrenetPoly::str() const {
    static const char* names[] = {"k", "k'", "k''", "k'''", "k4", "k5", "k6"};
    static const char* tnames[] = {"t", "t'", "t''", "t'''", "t4", "t5", "t6"};
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        os << (first ? "" : " + ") << c;
        for (int i = 0; i <= kD; ++i) {
            if (m[i]) os << "*" << names[i] << "^" << static_cast<int>(m[i]);
            if (m[kD + 1 + i]) os << "*" << tnames[i] << "^" << static_cast<int>(m[kD + 1 + i]);
        }
        first = false;
    }
    return first ? "0" : os.str();
}

FrenetVector frenet_derivative_vector(int order) {
    if (order < 1) throw std::invalid_argument("frenet_derivative_vector: order >= 1");
    // gamma' = T; then (aT + bN + cB)' = (a' - kb)T + (ka + b' - tc)N + (tb + c')B
    FrenetVector v;
    v.t = FrenetPoly::constant(1.0);
    const FrenetPoly kap = FrenetPoly::kappa();
    const FrenetPoly tau = FrenetPoly::tau();
    for (int d = 1; d < order; ++d) {
        FrenetVector next;
        next.t = v.t.derivative() - kap * v.n;
        next.n = v.n.derivative() + kap * v.t - tau * v.b;
        next.b = v.b.derivative() + tau * v.n;
        v = next;
    }
    return v;
}

FrenetPoly frenet_dot(int p, int q) {
    const FrenetVector a = frenet_derivative_vector(p);
    const FrenetVector b = frenet_derivative_vector(q);
    return a.t * b.t + a.n * b.n + a.b * b.b;
}

FrenetPoly frenet_chord_coefficient(int m) {
    double fact[16];
    fact[0] = 1.0;
    for (int i = 1; i < 16; ++i) fact[i] = fact[i - 1] * i;
    FrenetPoly acc;
    for (int p = 1; p <= m + 1; ++p) {
        const int q = m + 2 - p;
        if (q < 1) continue;
        acc += frenet_dot(p, q) * (1.0 / (fact[p] * fact[q]));
    }
    return acc;
}

FrenetPoly residue_density_pointwise(int j) {
    if (j < 0 || j > 2) throw std::invalid_argument("residue_density: only j <= 2 is derived");
    const int r = 2 * j;
    std::vector<FrenetPoly> f(r + 1);
    f[0] = FrenetPoly::constant(1.0);
    for (int m = 1; m <= r; ++m) f[m] = frenet_chord_coefficient(m);

    // power recurrence for (1 + sum f_m h^m)^alpha at alpha = -(2j+1)/2
    const double alpha = -(2.0 * j + 1.0) / 2.0;
    std::vector<FrenetPoly> h(r + 1);
    h[0] = FrenetPoly::constant(1.0);
    for (int i = 1; i <= r; ++i) {
        FrenetPoly acc;
        for (int k = 1; k <= i; ++k) acc += ((alpha + 1.0) * k - i) * f[k] * h[i - k];
        h[i] = acc * (1.0 / i);
    }
    return 2.0 * h[r];
}

namespace {

FrenetPoly monomial_poly(double c, int kap, int kap1, int tau0) {
    FrenetPoly built = FrenetPoly::constant(c);
    for (int e = 0; e < kap; ++e) built = built * FrenetPoly::kappa(0);
    for (int e = 0; e < kap1; ++e) built = built * FrenetPoly::kappa(1);
    for (int e = 0; e < tau0; ++e) built = built * FrenetPoly::tau(0);
    return built;
}

} // namespace

FrenetPoly residue_density(int j) {
    FrenetPoly p = residue_density_pointwise(j);
    // Under the closed-curve integral, kappa^a kappa'' reduces by parts:
    // int kappa^a kappa'' = -a int kappa^{a-1} kappa'^2.
    FrenetPoly out;
    for (const auto& [m, c] : p.terms()) {
        bool high = false;
        for (int d = 3; d <= FrenetPoly::kMaxDeriv; ++d)
            if (m[d] || m[FrenetPoly::kMaxDeriv + 1 + d]) high = true;
        if (high || m[FrenetPoly::kMaxDeriv + 1 + 1] || m[FrenetPoly::kMaxDeriv + 1 + 2])
            throw std::logic_error("residue_density: unhandled derivative in by-parts reduction");
        const int tau0 = m[FrenetPoly::kMaxDeriv + 1];
        if (m[2] == 0) {
            out += monomial_poly(c, m[0], m[1], tau0);
            continue;
        }
        if (m[2] != 1 || m[1] != 0)
            throw std::logic_error("residue_density: by-parts pattern not kappa^a * kappa''");
        const int a = m[0];
        if (a < 1) throw std::logic_error("residue_density: bare kappa'' under the integral");
        out += monomial_poly(-c * a, a - 1, 2, tau0);
    }
    return out;
}

} // namespace knotbeta
