#pragma once

// Frozen constants behind the comparability assertions. Each value was
// measured over the fixed calibration suite (flat line, two bump heights,
// a two-bump profile, a smoothed step pair) at the reference resolutions
// and then rounded outward with margin. Tests compare against these
// numbers; loosening them requires re-measuring the whole suite.

namespace wpc::calibration {

// Exponential-integrability bound for small mean oscillation:
// (1/|I|) int_I (e^{|u-u_I|} - 1) <= jn_c1 * ||u|| / (jn_c2 - ||u||)
// for ||u||_BMO below jn_c2.
inline constexpr double jn_c1 = 2.0;
inline constexpr double jn_c2 = 0.5;

// Poisson average gap: |avg over [x-y, x+y] of u - (Poisson ext)(x+iy)|
// <= poisson_gap_k * ||u||_BMO.
inline constexpr double poisson_gap_k = 3.0;

// Weighted-average bracket: |R_y(e^u)| and |e^{R_y(u)}| stay within this
// factor of each other for small mean oscillation.
inline constexpr double ry_bracket = 2.0;

// Smoothing estimates for the weighted average against the touching
// interval I = [x - y, x + y]:
//   |R_y(u)(x) - u_I| <= ry_mean_gap_k * ||u||_BMO
//   (1/|I|) int_I |e^{u - R_y(u)(x)} - 1| <= ry_osc_k * ||u||_BMO
inline constexpr double ry_mean_gap_k = 4.0;
inline constexpr double ry_osc_k = 4.0;

// Denominator floor for the weighted average: |phi_y * z_b'| below this
// is a hard numerical failure.
inline constexpr double ry_denominator_floor = 0.1;

// Bi-Lipschitz certification bounds for the reference extension of the
// calibration curves: grid-edge stretch ratios must stay inside
// [1/tau_bilip_k, tau_bilip_k].
inline constexpr double tau_bilip_k = 3.0;

// Quasiconformality margin for certified extensions.
inline constexpr double tau_mu_sup_max = 0.75;

// Pointwise square-average majorant of the base-extension Beltrami field:
// |mu(x+iy)|^2 <= lemma_majorant_k * (1/y) int_{-y}^{y} |u(t+x)-u(x)|^2 dt.
inline constexpr double lemma_majorant_k = 12.0;

// Slope of the energy scaling ||mu_{eps u}||_WP <= prop_scaling_k * eps * ||u||_{H 1/2}
// on the calibration ladder.
inline constexpr double prop_scaling_k = 6.0;

// Proximity of the general extension to the reference extension:
// sup |mu_rho - mu_tau| <= proximity_k * ||u||_{H 1/2} for small u.
inline constexpr double proximity_k = 6.0;

// Continuity sweep: the sewing-data distance at the smallest ladder
// amplitude must fall below sweep_final_gap, and each ladder step may
// exceed the previous one by at most the noise factor.
inline constexpr double sweep_final_gap = 0.05;
inline constexpr double sweep_noise = 1.1;

// Reverse sweep at the flat base: the recovered angle seminorm over
// eps * ||w|| stays within [1/sweep_bracket, sweep_bracket].
inline constexpr double sweep_bracket = 3.0;

// Ladder ratio spread for the Beltrami measures of the base extension:
// max/min of measure / ||u||_{H 1/2} across the ladder.
inline constexpr double scaling_spread = 2.0;

// Upper and lower half-plane Beltrami measures agree within this
// relative gap for real boundary data.
inline constexpr double halfplane_match = 0.2;

// Pushed-forward angle seminorm against the intrinsic one:
// ratio within [1/pushforward_bracket, pushforward_bracket].
inline constexpr double pushforward_bracket = 2.0;

// Boundary identity gap (real and imaginary trace relations) at the
// reference resolutions.
inline constexpr double boundary_identity_gap = 2e-3;

// Reflection identity gap on boundary samples.
inline constexpr double symmetry_gap = 2e-3;

// Chord-arc excess cap over the calibration suite.
inline constexpr double chord_arc_cap = 1.0;

// Roundtrip tolerance for the parametrization splitting.
inline constexpr double roundtrip_gap = 1e-3;

// Relative Cauchy-Riemann residual for the holomorphy probe.
inline constexpr double cr_residual = 5e-2;

}  // namespace wpc::calibration
