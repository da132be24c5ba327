#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace wpc {

using cplx = std::complex<double>;

// Sampling grid on the real line. Nodes are strictly increasing and
// symmetric about 0, so every grid covers a window [-L, L].
struct line_grid {
    std::vector<double> nodes;

    std::size_t size() const { return nodes.size(); }
    double operator[](std::size_t i) const { return nodes[i]; }
    double halfwidth() const { return nodes.back(); }
    double max_spacing() const;

    // Index of the last node <= x, clamped to [0, size()-2].
    std::size_t cell_of(double x) const;
};

line_grid make_line_grid(double halfwidth, std::size_t count);

// Uniform grid refined toward 0: each of `levels` passes halves the
// spacing on the middle half of the remaining center region.
line_grid make_refined_line_grid(double halfwidth, std::size_t count, int levels);

void validate_line_grid(const line_grid& g);

// Function sampled on a line_grid, piecewise linear between nodes and
// constant beyond the window. Real-valued data lives in the real part.
struct sampled_line_function {
    line_grid grid;
    std::vector<cplx> values;

    cplx eval(double x) const;
    cplx tail_left() const { return values.front(); }
    cplx tail_right() const { return values.back(); }
    bool is_real(double tol = 0.0) const;
};

sampled_line_function make_sampled(const line_grid& g, const std::vector<cplx>& v);
sampled_line_function sample_function(const line_grid& g, double (*f)(double));

// Trapezoid integral of the samples over the window.
cplx integrate_line(const sampled_line_function& u);
cplx integrate_line(const line_grid& g, const std::vector<cplx>& v);

// Cumulative trapezoid integral, anchored so the value at x = 0 is 0.
std::vector<cplx> cumulative_integral(const line_grid& g, const std::vector<cplx>& v);

// Monotone boundary map: samples of an increasing map of the line (real
// case) or of a parametrized boundary curve (complex case). Tails are
// affine with the stored slopes, so maps through infinity stay honest
// beyond the window.
struct monotone_boundary_map {
    line_grid grid;
    std::vector<cplx> values;
    bool monotone_real = true;
    cplx slope_left = 1.0;
    cplx slope_right = 1.0;

    cplx eval(double x) const;
    double eval_real(double x) const { return eval(x).real(); }
};

monotone_boundary_map make_monotone_map(const line_grid& g, const std::vector<double>& v);
monotone_boundary_map make_curve_map(const line_grid& g, const std::vector<cplx>& v,
                                     cplx slope_left, cplx slope_right);
void validate_monotone(const monotone_boundary_map& m);

// Piecewise-linear inverse of an increasing real map, resampled onto a
// symmetric grid that covers the range of m. Requires monotone_real.
monotone_boundary_map invert_monotone(const monotone_boundary_map& m, std::size_t count);

// Samples a.eval(b(x)) on b's grid. For real b only.
monotone_boundary_map compose_maps(const monotone_boundary_map& a, const monotone_boundary_map& b);

// Truncated half-plane grid: x nodes from a line_grid crossed with dyadic
// vertical levels y_max, y_max/2, ..., down to at least 6 levels. The
// orientation flag selects the upper or lower half plane; levels store
// magnitudes |y| in decreasing order.
struct half_plane_grid {
    line_grid xgrid;
    std::vector<double> ylevels;
    bool upper = true;

    std::size_t nx() const { return xgrid.size(); }
    std::size_t ny() const { return ylevels.size(); }
    // Signed height of level j.
    double y_at(std::size_t j) const { return upper ? ylevels[j] : -ylevels[j]; }
    double y_min() const { return ylevels.back(); }
    double y_max() const { return ylevels.front(); }
};

half_plane_grid make_half_plane_grid(const line_grid& xg, double y_max, std::size_t levels,
                                     bool upper);
void validate_half_plane_grid(const half_plane_grid& g);

using field_matrix = std::vector<std::vector<cplx>>;

field_matrix make_field_matrix(const half_plane_grid& g, cplx fill = 0.0);

// Complex samples over a half-plane grid.
struct half_plane_field {
    half_plane_grid grid;
    field_matrix values;

    cplx at(std::size_t j, std::size_t i) const { return values[j][i]; }
};

// Centered differences of a field matrix along x and along the dyadic
// levels, exact for quadratics on nonuniform spacing, one-sided at the
// edges.
field_matrix field_dx(const half_plane_grid& g, const field_matrix& v);
field_matrix field_dy(const half_plane_grid& g, const field_matrix& v);

// Trapezoid quadrature of `integrand(j, i)` dx dy over the truncation box
// [x_0, x_n] x [y_min, y_max]; vertical direction uses the nonuniform
// trapezoid rule across the dyadic levels.
double integrate_box(const half_plane_grid& g,
                     const std::function<double(std::size_t, std::size_t)>& integrand);

// Piecewise-linear interpolation helpers shared by the modules.
double interp_linear(const std::vector<double>& xs, const std::vector<double>& ys, double x);

}  // namespace wpc
