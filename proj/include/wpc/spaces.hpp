#pragma once

#include <map>
#include <string>
#include <vector>

#include "wpc/grid.hpp"

namespace wpc {

// Scalar results of a norm or probe computation, keyed by name, together
// with grid metadata and any caveats attached during evaluation.
struct norm_report {
    std::map<std::string, double> values;
    std::string grid_note;
    std::vector<std::string> notes;

    double value(const std::string& key) const;
};

// Half-order Sobolev seminorm of boundary data,
//   value^2 = (1/4 pi^2) iint |u(s)-u(t)|^2 / (s-t)^2 ds dt,
// evaluated over the window with a near-diagonal exclusion band of width
// 2 * max grid spacing and closed-form tail corrections for the constant
// tails. Reports keys "h12" and "h12_sq".
norm_report h12_seminorm(const sampled_line_function& u);

// Mean-oscillation norm over the dyadic interval family of the window,
// descending until intervals hold fewer than 4 cells. Keys "bmo",
// "level_count"; the maximizing interval is recorded in the notes.
norm_report bmo_norm(const sampled_line_function& u);

// Small-scale oscillation profile: for each scale the dyadic mean
// oscillation restricted to intervals no longer than that scale.
// Keys "vmo@<scale>" per requested scale.
norm_report vmo_modulus(const sampled_line_function& u, const std::vector<double>& scales);

// Dirichlet seminorm ((1/pi) iint |phi'|^2 dx dy)^{1/2} of a derivative
// field over the truncation box. Key "dirichlet".
norm_report dirichlet_seminorm(const half_plane_field& derivative);

// Hyperbolic sup norms on the half plane (density 1/|y|):
//   bloch:  sup |phi'(z)| |y|     (key "bloch", takes the derivative field)
//   b2:     sup |phi(z)| y^2      (key "b2")
norm_report bloch_norm(const half_plane_field& derivative);
norm_report b2_norm(const half_plane_field& phi);

// Square-integrable counterpart ((1/pi) iint |phi|^2 y^2 dx dy)^{1/2},
// key "bers_l2".
norm_report bers_l2_norm(const half_plane_field& phi);

// Beltrami coefficient samples with their attached size summaries:
// sup norm and the hyperbolic energy ((1/pi) iint |mu|^2 / y^2)^{1/2}.
struct beltrami_field {
    half_plane_grid grid;
    field_matrix values;
    double sup_norm = 0.0;
    double wp_energy = 0.0;
};

beltrami_field make_beltrami_field(const half_plane_grid& g, field_matrix values);

// Keys "sup", "energy", "wp" (= sup + energy).
norm_report wp_norm(const beltrami_field& mu);

// Distribution and mean probes of |u - u_I| on one interval:
// measured decay fractions at the given thresholds, the exponential mean,
// and p-means for p = 1, 2, 4, with flags against the calibrated
// exponential-integrability bound.
norm_report john_nirenberg_probe(const sampled_line_function& u, double a, double b,
                                 const std::vector<double>& thresholds);

// Harmonic (Poisson) extension of boundary data to the half-plane grid,
// with closed-form handling of the constant tails.
half_plane_field poisson_extend(const sampled_line_function& u, const half_plane_grid& g);

// Interval mean by trapezoid quadrature, shared by the probes.
cplx interval_mean(const sampled_line_function& u, double a, double b);

}  // namespace wpc
