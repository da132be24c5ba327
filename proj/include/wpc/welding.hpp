#pragma once

#include <cstddef>

#include "wpc/curve.hpp"
#include "wpc/extension.hpp"
#include "wpc/grid.hpp"
#include "wpc/spaces.hpp"
#include "wpc/zipper.hpp"

namespace wpc {

enum class map_side { left, right };

// Normalization actually applied to one Riemann map, with measured
// residuals of the pinned conditions: f(0) = 0, f(infinity) = infinity,
// f(1) = z(1), unit arc length of the boundary image of [0, 1].
struct map_gauge_record {
    double theta_star = 0.0;
    side_gauge gauge;
    double arc_unit = 1.0;
    double trace_gap = 0.0;
};

// One side of the curve: the Riemann map of the upper (left) or lower
// (right) half plane onto the domain the curve bounds on that side.
struct riemann_map_pair {
    map_side side = map_side::left;
    monotone_boundary_map boundary;        // map restricted to the real axis
    half_plane_field interior;             // continuous branch of log f'
    monotone_boundary_map correspondence;  // h1 resp. h2 over the curve tags
    map_gauge_record normalization;
    zipper_engine engine;
    double convergence_delta = 0.0;  // boundary movement under resolution doubling
};

struct curve_maps {
    riemann_map_pair left;
    riemann_map_pair right;
};

// The sewing data of a curve: h = h1 o h2^{-1} on the real axis together
// with the two correspondences and the sampled log h'.
struct welding_record {
    monotone_boundary_map h;
    monotone_boundary_map h1;
    monotone_boundary_map h2;
    sampled_line_function log_h_prime;
};

// A half-plane field bundled with the norms measured on it.
struct analytic_field {
    half_plane_field field;
    norm_report report;
};

// Riemann maps of both complementary domains of the curve, normalized as
// above, with boundary correspondences and interior log-derivative fields.
// The construction reruns at twice the resolution and reports the sup
// movement of the boundary samples as convergence_delta on both sides.
curve_maps riemann_maps(const curve_samples& c, std::size_t resolution);

// The boundary correspondence of one side, revalidated against the curve:
// strictly increasing, pinned at tags 0 and 1, trace gap within bounds.
monotone_boundary_map boundary_correspondence(const riemann_map_pair& m, const curve_samples& c);

// Conformal sewing map h = h1 o h2^{-1}, sampled by pairing the two
// correspondences at common curve tags; log h' from chord slopes of the
// pairs, interpolated to a uniform window grid.
welding_record welding_map(const riemann_map_pair& left, const riemann_map_pair& right,
                           const curve_samples& c);

// Continuous branch of the log-derivative field with the Dirichlet
// seminorm of its complex derivative attached (key "dirichlet").
analytic_field prelog_derivative(const riemann_map_pair& m);

// Schwarzian derivative S = N' - N^2/2 of the map with the given log
// derivative field, by centered differences in x. Attaches the hyperbolic
// sup norm (key "b2") and the square-integrable norm (key "bers_l2").
analytic_field schwarzian(const half_plane_field& f_prime_log);

// Beltrami coefficient of the composition F o H from the coefficient of F
// and the extension field of H,
//   mu = (mu_H + (mu_F o H) tau) / (1 + conj(mu_H) (mu_F o H) tau),
// tau = conj(dH) / dH. The pullback mu_F o H interpolates bilinearly on
// mu_F's grid; nodes whose image leaves the grid window are clamped to the
// nearest covered point and counted in *clamped when given. Throws
// degeneracy_error when the denominator falls below 1e-6 in magnitude.
beltrami_field beltrami_compose(const beltrami_field& mu_f, const extension_field& h,
                                std::size_t* clamped = nullptr);

// Average-based quasiconformal extension of an increasing boundary map:
// with a(x, y) and b(x, y) the means of h over [x, x+y] and [x-y, x],
//   F = (a + b)/2 + i (a - b),
// so h = id extends to the identity. The means and all four partial
// derivatives are evaluated in closed form from the piecewise-linear h.
extension_field beurling_ahlfors_extension(const monotone_boundary_map& h);

// Rebases the branch of an Im-ambiguous log field: each node moves by a
// multiple of 2 pi to match its neighbor along the unwrapping tree rooted
// at the row farthest from the boundary. Residual neighbor jumps above pi
// raise unwrapping_error.
half_plane_field unwrap_field(const half_plane_field& f);

// The sub-map on the nodes with |x| <= halfwidth, with chord slopes at the
// cut as the new tail slopes. The node set must stay symmetric.
monotone_boundary_map restrict_map(const monotone_boundary_map& m, double halfwidth);

}  // namespace wpc
