#include "knotbeta/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace knotbeta {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<cd>& a, int sign) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("fft: size must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cd wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::vector<cd> fft_forward_real(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    std::vector<cd> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = cd(samples[i], 0.0);
    fft_radix2(a, -1);
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& c : a) c *= inv;
    return a;
}

std::vector<double> fft_inverse_real(const std::vector<cd>& coeffs) {
    std::vector<cd> a = coeffs;
    fft_radix2(a, +1);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i].real();
    return out;
}

} // namespace knotbeta
