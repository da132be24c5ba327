#pragma once

#include "wpc/grid.hpp"

namespace wpc {

// Mollifier family on [-1, 1] built from the bump phi(x) = c * exp(-1/(1-x^2)).
//
//   phi      even, unit mass
//   psi_odd  -phi', odd, zero mass, first moment 1
//   psi_half (1/2)((1-ix) phi)', complex, zero mass; satisfies
//            y dbar(phi_y * w) = (psi_half)_y * w on the upper half plane
//   alpha    -x phi; satisfies d/dy(phi_y * w) = alpha_y * w' for y > 0
enum class kernel_spec { phi, psi_odd, psi_half, alpha };

cplx kernel_eval(kernel_spec k, double x);
cplx kernel_derivative(kernel_spec k, double x);

// Scaled kernel kappa_y(x) = |y|^{-1} kappa(|y|^{-1} x).
cplx kernel_scaled(kernel_spec k, double y, double x);

// Generic integrand access used by the convolution core.
struct line_function_view {
    std::function<cplx(double)> eval;
    const std::vector<double>* breakpoints;  // sample nodes, for quadrature splitting
};

line_function_view view_of(const sampled_line_function& u);
line_function_view view_of(const monotone_boundary_map& m);

// (kappa_y * w)(x) over the exact window [x-|y|, x+|y|], by per-piece
// Gauss-Legendre quadrature split at w's sample nodes. Throws for y = 0.
cplx convolve_scaled(kernel_spec k, double y, const sampled_line_function& w, double x);
cplx convolve_scaled(kernel_spec k, double y, const line_function_view& w, double x);

// Same quadrature against an arbitrary kernel function kappa(s) on [-1, 1].
cplx convolve_scaled_fn(const std::function<cplx(double)>& kappa, double y,
                        const line_function_view& w, double x);

// Derivatives of smoothed fields, as kernel-side identities:
//   d/dx (kappa_y * w)(x) = (1/|y|) (kappa')_y * w (x)
//   d/dy (kappa_y * w)(x) = -(sgn y / |y|) ((x kappa)')_y * w (x)
cplx convolve_scaled_dx(kernel_spec k, double y, const line_function_view& w, double x);
cplx convolve_scaled_dy(kernel_spec k, double y, const line_function_view& w, double x);

}  // namespace wpc
