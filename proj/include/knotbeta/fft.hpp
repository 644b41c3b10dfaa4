#pragma once

#include <complex>
#include <vector>

namespace knotbeta {

using cd = std::complex<double>;

/// In-place radix-2 FFT. Size must be a power of two.
/// sign = -1: forward transform (engineering convention), sign = +1: inverse
/// transform without the 1/n normalization.
void fft_radix2(std::vector<cd>& a, int sign);

/// Forward DFT of real samples, normalized by 1/n: coefficients c_m with
/// f(j) = sum_m c_m exp(2*pi*i*m*j/n).
std::vector<cd> fft_forward_real(const std::vector<double>& samples);

/// Evaluate the trigonometric interpolant given by coefficients on the n-grid.
std::vector<double> fft_inverse_real(const std::vector<cd>& coeffs);

/// Signed mode index for bin k of an n-point transform: 0,1,..,n/2,-(n/2-1),..,-1.
inline int fft_mode(std::size_t k, std::size_t n) {
    return k <= n / 2 ? static_cast<int>(k) : static_cast<int>(k) - static_cast<int>(n);
}

bool is_power_of_two(std::size_t n);

} // namespace knotbeta
