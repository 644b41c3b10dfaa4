#pragma once

#include <complex>
#include <optional>

#include "knotbeta/arc_frame.hpp"
#include "knotbeta/special_fn.hpp"

namespace knotbeta {

struct ContinuationConfig {
    /// Strip half-width. 0 requests the mandatory scan: the largest value
    /// <= l/8 with max |G(h)-1| <= 0.5 over the strip.
    double epsilon = 0.0;
    int order = 8;           // subtraction order r (even, 2 <= r <= D-2)
    double guard_radius = kDefaultGuardRadius;
    int far_gauss = 20;      // Gauss order per far panel
    double far_ratio = 1.45; // geometric panel growth away from the strip edge
    int rem_gauss = 24;      // Gauss order per remainder panel
    double rem_ratio = 1.4;  // geometric panel shrink toward h = 0
};

struct ResidueReport {
    int j = 0;
    double series_residue = 0.0;                 // 2 int h_{2j}(-2j-1, x) dx
    std::optional<double> formula_residue;       // Frenet-reduced density, j <= 2
    std::optional<double> oracle_residue;        // circle closed form, circles only
    std::optional<double> paper_printed;         // published constant for comparison
    bool printed_disagrees = false;
};

struct PoleScanReport {
    double g_values[4] = {0, 0, 0, 0}; // (s+2j+1) B(s) at -2j-1 +- {1e-2, 5e-3}
    double spread = 0.0;               // max pairwise difference
    double mean = 0.0;
};

/// Convergent-range double integral of ||gamma(x)-gamma(y)||^s, Re(s) > 0.
std::complex<double> beta_direct(const ArcFrame& frame, std::complex<double> s);
double beta_direct(const ArcFrame& frame, double s);

/// Meromorphic continuation by the split-domain scheme: an entire far-field
/// integral over |h| >= eps, the closed-form strip term
///   sum_{even i < r} 2 eps^{s+i+1}/(s+i+1) int h_i(s,x) dx,
/// and the numerically integrated strip remainder. Valid for
/// Re(s) > -r - 0.5, away from the poles -1, -3, -5, ...
MeroValue beta_eval(const ArcFrame& frame, std::complex<double> s,
                    const ContinuationConfig& cfg = {});

/// Residue at s = -2j-1 through independent routes: the per-knot numeric jet
/// series and (for j <= 2) the Frenet-reduced polynomial density. Requires
/// 2j < cfg.order.
ResidueReport beta_residue(const ArcFrame& frame, int j, const ContinuationConfig& cfg = {});

/// Numeric simplicity check of the pole at -2j-1: evaluates
/// g(s) = (s+2j+1) beta_eval(s) on both sides at two offsets.
PoleScanReport pole_scan(const ArcFrame& frame, int j, const ContinuationConfig& cfg = {});

/// Stability of beta_eval at a regular point: |B(s+delta) - B(s-delta)|.
double regularity_probe(const ArcFrame& frame, double s, double delta,
                        const ContinuationConfig& cfg = {});

/// Radius if the frame describes a round circle (constant curvature, zero
/// torsion), used to attach the closed-form oracle to reports.
std::optional<double> detect_circle_radius(const ArcFrame& frame);

/// Resolved strip half-width for a frame (the scan when cfg.epsilon == 0).
double resolve_epsilon(const ArcFrame& frame, const ContinuationConfig& cfg);

} // namespace knotbeta
