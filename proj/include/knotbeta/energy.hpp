#pragma once

#include <complex>

#include "knotbeta/arc_frame.hpp"
#include "knotbeta/continuation.hpp"
#include "knotbeta/special_fn.hpp"

namespace knotbeta {

struct EnergyReport {
    double E = 0.0;         // regularized chord-inverse-square energy
    double B_minus2 = 0.0;  // continuation value at s = -2
    double defect = 0.0;    // |B_minus2 - (E - 4)|
    double f_minus2 = 0.0;  // closed-form arc-power integral at s = -2
};

/// Shorter arc between x and y on a closed curve of length l.
double arc_distance(double l, double x, double y);

/// Closed form of the arc-power double integral: 2^{-s} l^{s+2} / (s+1),
/// simple pole at s = -1.
MeroValue arc_power_integral(double l, std::complex<double> s,
                             double guard = kDefaultGuardRadius);

struct EnergyConfig {
    double epsilon = 0.0;       // 0: reuse the chord-series margin scan
    int order = 8;              // series order used near the diagonal
    double series_switch = 1e-4; // |h| below this (times l) uses the series form
    int strip_panels = 32;
};

/// Mobius energy: double integral of chord^{-2} - (shorter arc)^{-2}. The
/// integrand extends continuously to the diagonal with value kappa^2/12; the
/// near-diagonal band evaluates it through the inverted chord series to avoid
/// cancellation. Independent of the beta_eval code path.
double mobius_energy(const ArcFrame& frame, const EnergyConfig& cfg = {});

/// Both routes to the energy identity B(-2) = E - 4 side by side.
EnergyReport prop31_check(const ArcFrame& frame, const EnergyConfig& ecfg = {},
                          const ContinuationConfig& ccfg = {});

/// The regularized comparison functional D(s) = int int [chord^s - d^s],
/// holomorphic on Re(s) > -3. Used by regularity tests.
double energy_difference_functional(const ArcFrame& frame, double s,
                                    const EnergyConfig& cfg = {});

} // namespace knotbeta
