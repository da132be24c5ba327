#include "wpc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "wpc/errors.hpp"

namespace wpc {

double line_grid::max_spacing() const {
    double h = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) h = std::max(h, nodes[i + 1] - nodes[i]);
    return h;
}

std::size_t line_grid::cell_of(double x) const {
    if (x <= nodes.front()) return 0;
    if (x >= nodes.back()) return nodes.size() - 2;
    auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    std::size_t i = static_cast<std::size_t>(it - nodes.begin());
    return i - 1;
}

line_grid make_line_grid(double halfwidth, std::size_t count) {
    if (!(halfwidth > 0.0)) throw std::invalid_argument("make_line_grid: halfwidth must be positive");
    if (count < 16) throw std::invalid_argument("make_line_grid: need at least 16 nodes");
    if (count % 2 == 0) throw std::invalid_argument("make_line_grid: node count must be odd so 0 is a node");
    line_grid g;
    g.nodes.resize(count);
    std::size_t m = count / 2;
    // Mirror the two halves so symmetry about 0 is exact in floating point.
    for (std::size_t i = 0; i <= m; ++i) {
        double x = halfwidth * static_cast<double>(i) / static_cast<double>(m);
        g.nodes[m + i] = x;
        g.nodes[m - i] = -x;
    }
    g.nodes[m] = 0.0;
    return g;
}

line_grid make_refined_line_grid(double halfwidth, std::size_t count, int levels) {
    if (levels < 0) throw std::invalid_argument("make_refined_line_grid: negative level count");
    std::set<double> pts;
    line_grid base = make_line_grid(halfwidth, count);
    for (double x : base.nodes) pts.insert(x);
    double region = halfwidth;
    double h = base.max_spacing();
    for (int l = 0; l < levels; ++l) {
        region *= 0.5;
        h *= 0.5;
        for (double x = 0.0; x <= region + 1e-12 * halfwidth; x += h) {
            pts.insert(x);
            pts.insert(-x);
        }
    }
    line_grid g;
    g.nodes.assign(pts.begin(), pts.end());
    validate_line_grid(g);
    return g;
}

void validate_line_grid(const line_grid& g) {
    if (g.nodes.size() < 16) throw std::invalid_argument("line_grid: need at least 16 nodes");
    for (std::size_t i = 0; i + 1 < g.nodes.size(); ++i) {
        if (!(g.nodes[i] < g.nodes[i + 1]))
            throw std::invalid_argument("line_grid: nodes must be strictly increasing");
    }
    std::size_t n = g.nodes.size();
    double scale = std::max(1.0, g.nodes.back());
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(g.nodes[i] + g.nodes[n - 1 - i]) > 1e-12 * scale)
            throw std::invalid_argument("line_grid: nodes must be symmetric about 0");
    }
}

cplx sampled_line_function::eval(double x) const {
    if (x <= grid.nodes.front()) return values.front();
    if (x >= grid.nodes.back()) return values.back();
    std::size_t i = grid.cell_of(x);
    double t = (x - grid.nodes[i]) / (grid.nodes[i + 1] - grid.nodes[i]);
    return values[i] * (1.0 - t) + values[i + 1] * t;
}

bool sampled_line_function::is_real(double tol) const {
    for (const cplx& v : values)
        if (std::abs(v.imag()) > tol) return false;
    return true;
}

sampled_line_function make_sampled(const line_grid& g, const std::vector<cplx>& v) {
    validate_line_grid(g);
    if (v.size() != g.size())
        throw std::invalid_argument("make_sampled: value count does not match grid");
    return sampled_line_function{g, v};
}

sampled_line_function sample_function(const line_grid& g, double (*f)(double)) {
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g.nodes[i]);
    return make_sampled(g, v);
}

cplx integrate_line(const line_grid& g, const std::vector<cplx>& v) {
    if (v.size() != g.size()) throw std::invalid_argument("integrate_line: size mismatch");
    cplx acc = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        acc += 0.5 * (v[i] + v[i + 1]) * (g.nodes[i + 1] - g.nodes[i]);
    return acc;
}

cplx integrate_line(const sampled_line_function& u) { return integrate_line(u.grid, u.values); }

std::vector<cplx> cumulative_integral(const line_grid& g, const std::vector<cplx>& v) {
    if (v.size() != g.size()) throw std::invalid_argument("cumulative_integral: size mismatch");
    std::vector<cplx> out(v.size());
    out[0] = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        out[i + 1] = out[i] + 0.5 * (v[i] + v[i + 1]) * (g.nodes[i + 1] - g.nodes[i]);
    // Anchor at x = 0 (interpolating when 0 is not itself a node).
    std::size_t zero = g.cell_of(0.0);
    double t = (0.0 - g.nodes[zero]) / (g.nodes[zero + 1] - g.nodes[zero]);
    cplx at0 = out[zero] * (1.0 - t) + out[zero + 1] * t;
    for (cplx& c : out) c -= at0;
    return out;
}

cplx monotone_boundary_map::eval(double x) const {
    if (x < grid.nodes.front()) return values.front() + slope_left * (x - grid.nodes.front());
    if (x > grid.nodes.back()) return values.back() + slope_right * (x - grid.nodes.back());
    std::size_t i = grid.cell_of(x);
    double t = (x - grid.nodes[i]) / (grid.nodes[i + 1] - grid.nodes[i]);
    return values[i] * (1.0 - t) + values[i + 1] * t;
}

monotone_boundary_map make_monotone_map(const line_grid& g, const std::vector<double>& v) {
    validate_line_grid(g);
    if (v.size() != g.size())
        throw std::invalid_argument("make_monotone_map: value count does not match grid");
    monotone_boundary_map m;
    m.grid = g;
    m.values.assign(v.begin(), v.end());
    m.monotone_real = true;
    // Tail slopes follow the outermost chords.
    std::size_t n = v.size();
    m.slope_left = (v[1] - v[0]) / (g.nodes[1] - g.nodes[0]);
    m.slope_right = (v[n - 1] - v[n - 2]) / (g.nodes[n - 1] - g.nodes[n - 2]);
    validate_monotone(m);
    return m;
}

monotone_boundary_map make_curve_map(const line_grid& g, const std::vector<cplx>& v,
                                     cplx slope_left, cplx slope_right) {
    validate_line_grid(g);
    if (v.size() != g.size())
        throw std::invalid_argument("make_curve_map: value count does not match grid");
    monotone_boundary_map m;
    m.grid = g;
    m.values = v;
    m.monotone_real = false;
    m.slope_left = slope_left;
    m.slope_right = slope_right;
    return m;
}

void validate_monotone(const monotone_boundary_map& m) {
    if (!m.monotone_real) return;
    for (std::size_t i = 0; i + 1 < m.values.size(); ++i) {
        if (!(m.values[i].real() < m.values[i + 1].real()))
            throw certification_error("monotone_boundary_map: samples are not strictly increasing");
        if (m.values[i].imag() != 0.0)
            throw std::invalid_argument("monotone_boundary_map: real map carries imaginary parts");
    }
    if (!(m.slope_left.real() > 0.0) || !(m.slope_right.real() > 0.0))
        throw certification_error("monotone_boundary_map: tail slopes must be positive");
}

monotone_boundary_map invert_monotone(const monotone_boundary_map& m, std::size_t count) {
    if (!m.monotone_real)
        throw std::invalid_argument("invert_monotone: map must be real and increasing");
    validate_monotone(m);
    double lo = m.values.front().real();
    double hi = m.values.back().real();
    double radius = std::max(std::abs(lo), std::abs(hi));
    line_grid g = make_line_grid(radius, count);
    std::vector<double> xs(m.values.size()), ys(m.values.size());
    for (std::size_t i = 0; i < m.values.size(); ++i) {
        xs[i] = m.values[i].real();
        ys[i] = m.grid.nodes[i];
    }
    std::vector<double> inv(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        double y = g.nodes[i];
        if (y < lo) {
            inv[i] = m.grid.nodes.front() + (y - lo) / m.slope_left.real();
        } else if (y > hi) {
            inv[i] = m.grid.nodes.back() + (y - hi) / m.slope_right.real();
        } else {
            inv[i] = interp_linear(xs, ys, y);
        }
    }
    return make_monotone_map(g, inv);
}

monotone_boundary_map compose_maps(const monotone_boundary_map& a, const monotone_boundary_map& b) {
    if (!b.monotone_real) throw std::invalid_argument("compose_maps: inner map must be real");
    monotone_boundary_map out;
    out.grid = b.grid;
    out.values.resize(b.values.size());
    for (std::size_t i = 0; i < b.values.size(); ++i) out.values[i] = a.eval(b.values[i].real());
    out.monotone_real = a.monotone_real;
    out.slope_left = a.slope_left * b.slope_left;
    out.slope_right = a.slope_right * b.slope_right;
    return out;
}

half_plane_grid make_half_plane_grid(const line_grid& xg, double y_max, std::size_t levels,
                                     bool upper) {
    validate_line_grid(xg);
    if (!(y_max >= 1.0)) throw std::invalid_argument("make_half_plane_grid: y_max must be >= 1");
    if (levels < 6) throw std::invalid_argument("make_half_plane_grid: need at least 6 levels");
    half_plane_grid g;
    g.xgrid = xg;
    g.upper = upper;
    g.ylevels.resize(levels);
    double y = y_max;
    for (std::size_t j = 0; j < levels; ++j) {
        g.ylevels[j] = y;
        y *= 0.5;
    }
    return g;
}

void validate_half_plane_grid(const half_plane_grid& g) {
    validate_line_grid(g.xgrid);
    if (g.ylevels.size() < 6) throw std::invalid_argument("half_plane_grid: need at least 6 levels");
    if (!(g.ylevels.front() >= 1.0)) throw std::invalid_argument("half_plane_grid: y_max must be >= 1");
    for (std::size_t j = 0; j + 1 < g.ylevels.size(); ++j) {
        if (!(g.ylevels[j] > 0.0) || !(g.ylevels[j + 1] > 0.0))
            throw std::invalid_argument("half_plane_grid: levels must be positive");
        if (std::abs(g.ylevels[j + 1] - 0.5 * g.ylevels[j]) > 1e-12 * g.ylevels[j])
            throw std::invalid_argument("half_plane_grid: levels must halve");
    }
}

field_matrix make_field_matrix(const half_plane_grid& g, cplx fill) {
    return field_matrix(g.ny(), std::vector<cplx>(g.nx(), fill));
}

field_matrix field_dx(const half_plane_grid& g, const field_matrix& v) {
    field_matrix out = make_field_matrix(g);
    const std::vector<double>& x = g.xgrid.nodes;
    std::size_t nx = g.nx();
    for (std::size_t j = 0; j < g.ny(); ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            if (i == 0) {
                out[j][i] = (v[j][1] - v[j][0]) / (x[1] - x[0]);
            } else if (i == nx - 1) {
                out[j][i] = (v[j][nx - 1] - v[j][nx - 2]) / (x[nx - 1] - x[nx - 2]);
            } else {
                double hl = x[i] - x[i - 1];
                double hr = x[i + 1] - x[i];
                // Three-point formula exact for quadratics on nonuniform spacing.
                out[j][i] = (hl * hl * v[j][i + 1] - hr * hr * v[j][i - 1] +
                             (hr * hr - hl * hl) * v[j][i]) /
                            (hl * hr * (hl + hr));
            }
        }
    }
    return out;
}

field_matrix field_dy(const half_plane_grid& g, const field_matrix& v) {
    field_matrix out = make_field_matrix(g);
    std::size_t ny = g.ny();
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < g.nx(); ++i) {
            if (j == 0) {
                out[j][i] = (v[0][i] - v[1][i]) / (g.y_at(0) - g.y_at(1));
            } else if (j == ny - 1) {
                out[j][i] = (v[ny - 2][i] - v[ny - 1][i]) / (g.y_at(ny - 2) - g.y_at(ny - 1));
            } else {
                double hu = g.y_at(j - 1) - g.y_at(j);
                double hd = g.y_at(j) - g.y_at(j + 1);
                out[j][i] = (hd * hd * v[j - 1][i] - hu * hu * v[j + 1][i] +
                             (hu * hu - hd * hd) * v[j][i]) /
                            (hu * hd * (hu + hd));
            }
        }
    }
    return out;
}

double integrate_box(const half_plane_grid& g,
                     const std::function<double(std::size_t, std::size_t)>& integrand) {
    // Levels are stored decreasing in |y|; integrate rows in x first.
    std::vector<double> rows(g.ny());
    for (std::size_t j = 0; j < g.ny(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < g.nx(); ++i) {
            acc += 0.5 * (integrand(j, i) + integrand(j, i + 1)) *
                   (g.xgrid.nodes[i + 1] - g.xgrid.nodes[i]);
        }
        rows[j] = acc;
    }
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < g.ny(); ++j)
        acc += 0.5 * (rows[j] + rows[j + 1]) * (g.ylevels[j] - g.ylevels[j + 1]);
    return acc;
}

double interp_linear(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("interp_linear: bad table");
    if (x <= xs.front()) {
        double t = (x - xs.front()) / (xs[1] - xs[0]);
        return ys[0] + t * (ys[1] - ys[0]);
    }
    if (x >= xs.back()) {
        std::size_t n = xs.size();
        double t = (x - xs[n - 2]) / (xs[n - 1] - xs[n - 2]);
        return ys[n - 2] + t * (ys[n - 1] - ys[n - 2]);
    }
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return ys[i] + t * (ys[i + 1] - ys[i]);
}

}  // namespace wpc
