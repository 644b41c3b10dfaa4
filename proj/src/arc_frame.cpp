#include "knotbeta/arc_frame.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "knotbeta/parallel.hpp"

namespace knotbeta {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> speed_samples(const Knot& knot, int m) {
    std::vector<double> v(m);
    for (int i = 0; i < m; ++i) v[i] = knot.speed(kTwoPi * i / m);
    return v;
}

/// Arc length s(t) from the Fourier coefficients of the speed. Only the
/// modes above the rounding floor are kept, so evaluation cost tracks the
/// actual spectral content of |c'|.
class ArcOfParam {
public:
    ArcOfParam(const Knot& knot, int m) {
        const auto vhat = fft_forward_real(speed_samples(knot, m));
        double vmax = 0.0;
        for (const cd& c : vhat) vmax = std::max(vmax, std::abs(c));
        for (int k = 1; k < m / 2; ++k)
            if (std::abs(vhat[k]) >= 1e-16 * vmax) modes_.emplace_back(k, vhat[k]);
        mean_ = vhat[0].real();
        length_ = mean_ * kTwoPi;
    }

    double length() const { return length_; }

    double operator()(double t) const {
        double acc = mean_ * t;
        for (const auto& [k, c] : modes_) {
            // c_k (e^{ikt}-1)/(ik) plus the conjugate mode; speed is real
            const cd num(std::cos(k * t) - 1.0, std::sin(k * t));
            acc += 2.0 * (c * num / cd(0.0, static_cast<double>(k))).real();
        }
        return acc;
    }

private:
    double mean_ = 0.0;
    double length_ = 0.0;
    std::vector<std::pair<int, cd>> modes_;
};

} // namespace

double arc_length(const Knot& knot) {
    if (!knot.smooth()) {
        double l = 0.0;
        const auto& v = knot.vertices();
        for (std::size_t i = 0; i < v.size(); ++i) l += norm(v[(i + 1) % v.size()] - v[i]);
        return l;
    }
    int m = 2048;
    double prev = 0.0;
    for (int pass = 0; pass < 6; ++pass) {
        const auto v = speed_samples(knot, m);
        double acc = 0.0;
        for (double s : v) acc += s;
        const double l = acc * kTwoPi / m;
        if (pass > 0 && std::abs(l - prev) <= 1e-14 * l) return l;
        prev = l;
        m *= 2;
    }
    return prev;
}

ArcFrame::ArcFrame(const Knot& knot, int N, int D) : knot_(knot), n_(N), dmax_(D) {
    if (!knot.smooth()) throw std::invalid_argument("ArcFrame: knot must be a smooth variant");
    if (N < 64 || !is_power_of_two(static_cast<std::size_t>(N)))
        throw std::invalid_argument("ArcFrame: N must be a power of two >= 64");
    if (D < 3 || D > 16) throw std::invalid_argument("ArcFrame: derivative order out of range");
    build_spectrum(knot, D);
}

void ArcFrame::build_spectrum(const Knot& knot, int) {
    const int m = std::max(n_, 512);
    m_ = m;

    const int fine = 8 * m;
    ArcOfParam arc(knot, fine);
    length_ = arc.length();
    if (!(length_ > 0.0)) throw std::runtime_error("ArcFrame: degenerate curve length");

    // Cumulative arc length on the fine parameter grid seeds the inversion.
    std::vector<double> cum(fine + 1, 0.0);
    for (int i = 0; i < fine; ++i) cum[i + 1] = arc(kTwoPi * (i + 1) / fine);

    std::vector<double> t_of_x(m);
    parallel_for(m, [&](std::size_t i) {
        const double target = length_ * static_cast<double>(i) / m;
        const auto it = std::upper_bound(cum.begin(), cum.end(), target);
        int j = static_cast<int>(std::distance(cum.begin(), it)) - 1;
        j = std::clamp(j, 0, fine - 1);
        double lo = kTwoPi * j / fine, hi = kTwoPi * (j + 1) / fine;
        double t = 0.5 * (lo + hi);
        for (int iter = 0; iter < 100; ++iter) {
            const double f = arc(t) - target;
            if (std::abs(f) <= 1e-13 * length_) break;
            if (f > 0.0) hi = t; else lo = t;
            const double step = f / knot.speed(t);
            double next = t - step;
            if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
            t = next;
        }
        t_of_x[i] = t;
    });

    // Filtered position spectrum on the internal grid.
    std::vector<double> coord(m);
    double cmax = 0.0;
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < m; ++i) {
            const Vec3 g = knot.position(t_of_x[i]);
            coord[i] = c == 0 ? g.x : (c == 1 ? g.y : g.z);
        }
        spectrum_[c] = fft_forward_real(coord);
        for (const cd& v : spectrum_[c]) cmax = std::max(cmax, std::abs(v));
    }
    for (int c = 0; c < 3; ++c)
        for (cd& v : spectrum_[c])
            if (std::abs(v) < 1e-13 * cmax) v = 0.0;

    // Spectral derivatives, evaluated on the M-grid and strided down to N.
    const int stride = m / n_;
    deriv_.assign(dmax_ + 1, std::vector<Vec3>(n_));
    std::vector<cd> work(m);
    for (int d = 0; d <= dmax_; ++d) {
        for (int c = 0; c < 3; ++c) {
            for (int k = 0; k < m; ++k) {
                int mode = fft_mode(k, m);
                if (d % 2 == 1 && k == m / 2) mode = 0; // drop Nyquist for odd derivatives
                const cd factor = std::pow(cd(0.0, kTwoPi * mode / length_), d);
                work[k] = spectrum_[c][k] * factor;
            }
            const auto vals = fft_inverse_real(work);
            for (int i = 0; i < n_; ++i) {
                double& slot = c == 0 ? deriv_[d][i].x : (c == 1 ? deriv_[d][i].y : deriv_[d][i].z);
                slot = vals[static_cast<std::size_t>(i) * stride];
            }
        }
    }

    kappa_.resize(n_);
    tau_.assign(n_, 0.0);
    tau_defined_.assign(n_, 0);
    kappa_prime_.resize(n_);
    constexpr double kKappaFloor = 1e-10;
    for (int i = 0; i < n_; ++i) {
        const Vec3& g1 = deriv_[1][i];
        const Vec3& g2 = deriv_[2][i];
        const Vec3& g3 = deriv_[3][i];
        kappa_[i] = norm(g2);
        if (kappa_[i] > kKappaFloor) {
            tau_[i] = det3(g1, g2, g3) / (kappa_[i] * kappa_[i]);
            tau_defined_[i] = 1;
            kappa_prime_[i] = dot(g2, g3) / kappa_[i];
        }
    }

    for (int i = 0; i < n_; ++i) {
        if (std::abs(norm(deriv_[1][i]) - 1.0) > 1e-9)
            throw std::runtime_error("ArcFrame: unit-speed invariant violated; raise N");
        if (std::abs(dot(deriv_[1][i], deriv_[2][i])) > 1e-8)
            throw std::runtime_error("ArcFrame: arc-length orthogonality invariant violated");
    }
}

FrenetData ArcFrame::frenet(int i) const {
    FrenetData f;
    f.kappa = kappa_[i];
    f.tau = tau(i);
    f.kappa_prime = kappa_prime_[i];
    return f;
}

std::vector<Vec3> ArcFrame::chord_table(double h) const {
    const int m = m_;
    const int stride = m / n_;
    std::vector<Vec3> out(n_);
    std::vector<cd> work(m);
    for (int c = 0; c < 3; ++c) {
        for (int k = 0; k < m; ++k) {
            if (spectrum_[c][k] == cd(0.0)) {
                work[k] = 0.0;
                continue;
            }
            const double ang = std::numbers::pi * fft_mode(k, m) * h / length_;
            // e^{2i ang} - 1 = 2i sin(ang) e^{i ang}: exact at small h
            const cd factor = cd(0.0, 2.0 * std::sin(ang)) * cd(std::cos(ang), std::sin(ang));
            work[k] = spectrum_[c][k] * factor;
        }
        const auto vals = fft_inverse_real(work);
        for (int i = 0; i < n_; ++i) {
            double& slot = c == 0 ? out[i].x : (c == 1 ? out[i].y : out[i].z);
            slot = vals[static_cast<std::size_t>(i) * stride];
        }
    }
    return out;
}

Vec3 ArcFrame::position_at(double x) const {
    Vec3 out{};
    for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int k = 0; k < m_; ++k) {
            const cd& coef = spectrum_[c][k];
            if (coef == cd(0.0)) continue;
            const double ang = kTwoPi * fft_mode(k, m_) * x / length_;
            acc += (coef * cd(std::cos(ang), std::sin(ang))).real();
        }
        (c == 0 ? out.x : c == 1 ? out.y : out.z) = acc;
    }
    return out;
}

double ArcFrame::chord_series_margin_scan(double eps_max) const {
    double eps = std::min(eps_max, length_ / 4.0 * (1.0 - 1e-12));
    constexpr int probes = 48;
    for (int attempt = 0; attempt < 60; ++attempt) {
        bool ok = true;
        for (int j = 1; j <= probes && ok; ++j) {
            const double h = eps * j / probes;
            const auto chords = chord_table(h);
            for (const Vec3& d : chords) {
                const double g = norm2(d) / (h * h);
                if (std::abs(g - 1.0) > 0.5) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return eps;
        eps *= 0.8;
    }
    throw std::runtime_error("chord_series_margin_scan: no admissible strip width");
}

} // namespace knotbeta
