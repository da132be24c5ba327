#pragma once

#include "wpc/curve.hpp"
#include "wpc/kernels.hpp"
#include "wpc/spaces.hpp"

namespace wpc {

// A sampled quasiconformal extension: map values, Wirtinger derivative
// fields assembled as (1/2)(d_x -+ i d_y), and the boundary row the field
// extends.
struct extension_field {
    half_plane_grid grid;
    field_matrix values;
    field_matrix dz;
    field_matrix dzbar;
    std::vector<cplx> boundary;

    cplx value_at(std::size_t j, std::size_t i) const { return values[j][i]; }
};

// Beltrami coefficient mu = dzbar / dz of an extension field. Throws when
// the holomorphic derivative degenerates.
beltrami_field beltrami_of_field(const extension_field& f);

// Weighted smoothing average R_y(w)(x) = phi_y*(z_b' w)(x) / phi_y*z_b'(x)
// with weight z_b' = e^{ib}. The denominator is guarded by the calibrated
// floor; falling below it is a hard numerical failure.
cplx ry_operator(const tangent_angle& b, double y, const sampled_line_function& w, double x);

// Base extension of the curve gamma_u,
//   rho(x+iy) = (phi_y * gamma_u)(x) - i sgn(y) (psi_y * gamma_u)(x),
// with psi = psi_odd; boundary row gamma_u. Derivatives come from kernel
// identities (no finite differences).
extension_field extension_base(const tangent_angle& u, const half_plane_grid& g);

struct certified_extension {
    extension_field field;
    norm_report certificate;
};

// Reference extension tau of the curve z_b: the base extension at u = b,
// certified bi-Lipschitz on grid edges and uniformly quasiconformal
// against the frozen calibration bounds.
certified_extension tau_bilipschitz(const tangent_angle& b, const half_plane_grid& g);

// General extension around the reference curve:
//   rho(z) = (phi_y * omega_u)(x) + R_y(e^{iu})(x) { tau(z) - (phi_y * tau|_R)(x) }
// where omega_u(x) = int_0^x e^{i(b+u)} and tau|_R = z_b. The perturbation
// u may be complex. Derivatives of the smoothed terms use kernel
// identities; tau enters through centered differences across the grid.
extension_field extension_general(const tangent_angle& b, const sampled_line_function& u,
                                  const extension_field& tau);

// Perturbed boundary curve omega_u as a boundary map with affine tails.
monotone_boundary_map omega_curve(const tangent_angle& b, const sampled_line_function& u);

// Replaces the derivative fields by centered differences of the sampled
// values. Fields whose tau-term already enters by differences should be
// compared against references assembled the same way.
extension_field with_difference_derivatives(const extension_field& f);

}  // namespace wpc
