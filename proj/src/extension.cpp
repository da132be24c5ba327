#include "wpc/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wpc/calibration.hpp"
#include "wpc/errors.hpp"

namespace wpc {

namespace {

constexpr cplx iunit{0.0, 1.0};

cplx csinc(cplx z) {
    if (std::abs(z) < 1e-8) return 1.0 - z * z / 6.0;
    return std::sin(z) / z;
}

// Exponent c(t) = b(t) + u(t) of the perturbed curve derivative, complex
// in general, evaluated through the shared piecewise-linear interpolant.
struct exponent_view {
    const tangent_angle* b;
    const sampled_line_function* u;  // may be null

    cplx at(double t) const {
        cplx e = b->samples.eval(t);
        if (u) e += u->eval(t);
        return e;
    }
};

// Derivative of the perturbed curve, omega' = e^{i(b+u)}.
line_function_view derivative_view(const exponent_view& e, const std::vector<double>& nodes) {
    return line_function_view{[e](double t) { return std::exp(iunit * e.at(t)); }, &nodes};
}

}  // namespace

beltrami_field beltrami_of_field(const extension_field& f) {
    field_matrix mu = make_field_matrix(f.grid);
    for (std::size_t j = 0; j < f.grid.ny(); ++j) {
        for (std::size_t i = 0; i < f.grid.nx(); ++i) {
            cplx dz = f.dz[j][i];
            if (std::abs(dz) < 1e-12)
                throw numerical_error("beltrami_of_field: degenerate holomorphic derivative");
            mu[j][i] = f.dzbar[j][i] / dz;
        }
    }
    return make_beltrami_field(f.grid, std::move(mu));
}

cplx ry_operator(const tangent_angle& b, double y, const sampled_line_function& w, double x) {
    const std::vector<double>& nodes = b.samples.grid.nodes;
    exponent_view e{&b, nullptr};
    line_function_view zd = derivative_view(e, nodes);
    line_function_view weighted{
        [&](double t) { return std::exp(iunit * b.samples.eval(t)) * w.eval(t); }, &nodes};
    cplx den = convolve_scaled(kernel_spec::phi, y, zd, x);
    if (std::abs(den) < calibration::ry_denominator_floor)
        throw numerical_error("ry_operator: smoothing denominator fell below the floor");
    cplx num = convolve_scaled(kernel_spec::phi, y, weighted, x);
    return num / den;
}

extension_field extension_base(const tangent_angle& u, const half_plane_grid& g) {
    validate_half_plane_grid(g);
    curve_samples gamma = gamma_u(u);
    monotone_boundary_map gamma_map = curve_as_map(gamma);
    line_function_view gv = view_of(gamma_map);
    exponent_view e{&u, nullptr};
    line_function_view gd = derivative_view(e, u.samples.grid.nodes);

    extension_field f;
    f.grid = g;
    f.values = make_field_matrix(g);
    f.dz = make_field_matrix(g);
    f.dzbar = make_field_matrix(g);
    f.boundary.resize(g.nx());
    for (std::size_t i = 0; i < g.nx(); ++i) f.boundary[i] = gamma_map.eval(g.xgrid.nodes[i]);

    double sgn = g.upper ? 1.0 : -1.0;
    for (std::size_t j = 0; j < g.ny(); ++j) {
        double y = g.y_at(j);
        for (std::size_t i = 0; i < g.nx(); ++i) {
            double x = g.xgrid.nodes[i];
            cplx smooth = convolve_scaled(kernel_spec::phi, y, gv, x);
            cplx odd = convolve_scaled(kernel_spec::psi_odd, y, gv, x);
            f.values[j][i] = smooth - iunit * sgn * odd;

            cplx dx = convolve_scaled(kernel_spec::phi, y, gd, x) -
                      iunit * sgn * convolve_scaled(kernel_spec::psi_odd, y, gd, x);
            // d/dy (kappa_y * w) = sgn(y) (-t kappa)_y * w'.
            cplx dy_smooth = sgn * convolve_scaled(kernel_spec::alpha, y, gd, x);
            cplx dy_odd =
                sgn * convolve_scaled_fn(
                          [](double s) { return -s * kernel_eval(kernel_spec::psi_odd, s); }, y,
                          gd, x);
            cplx dy = dy_smooth - iunit * sgn * dy_odd;
            f.dz[j][i] = 0.5 * (dx - iunit * dy);
            f.dzbar[j][i] = 0.5 * (dx + iunit * dy);
        }
    }
    return f;
}

certified_extension tau_bilipschitz(const tangent_angle& b, const half_plane_grid& g) {
    extension_field f = extension_base(b, g);

    double worst_ratio = 1.0;
    auto edge = [&](cplx za, cplx zb, cplx va, cplx vb) {
        double stretch = std::abs(vb - va) / std::abs(zb - za);
        worst_ratio = std::max(worst_ratio, std::max(stretch, 1.0 / stretch));
    };
    for (std::size_t j = 0; j < g.ny(); ++j) {
        double y = g.y_at(j);
        for (std::size_t i = 0; i + 1 < g.nx(); ++i)
            edge(cplx(g.xgrid.nodes[i], y), cplx(g.xgrid.nodes[i + 1], y), f.values[j][i],
                 f.values[j][i + 1]);
    }
    for (std::size_t j = 0; j + 1 < g.ny(); ++j) {
        for (std::size_t i = 0; i < g.nx(); ++i)
            edge(cplx(g.xgrid.nodes[i], g.y_at(j)), cplx(g.xgrid.nodes[i], g.y_at(j + 1)),
                 f.values[j][i], f.values[j + 1][i]);
    }

    double min_dz = std::numeric_limits<double>::infinity();
    for (const auto& row : f.dz)
        for (const cplx& d : row) min_dz = std::min(min_dz, std::abs(d));

    beltrami_field mu = beltrami_of_field(f);

    norm_report cert;
    cert.values["edge_ratio_max"] = worst_ratio;
    cert.values["min_dz"] = min_dz;
    cert.values["mu_sup"] = mu.sup_norm;
    cert.values["mu_energy"] = mu.wp_energy;
    if (worst_ratio > calibration::tau_bilip_k)
        throw certification_error("tau_bilipschitz: edge stretch exceeds the frozen bound");
    if (!(min_dz > 0.0))
        throw certification_error("tau_bilipschitz: holomorphic derivative degenerates");
    if (mu.sup_norm > calibration::tau_mu_sup_max)
        throw certification_error("tau_bilipschitz: field is not uniformly quasiconformal");
    return certified_extension{std::move(f), std::move(cert)};
}

monotone_boundary_map omega_curve(const tangent_angle& b, const sampled_line_function& u) {
    const line_grid& g = b.samples.grid;
    if (u.grid.nodes != g.nodes)
        throw std::invalid_argument("omega_curve: perturbation must share the angle grid");
    std::size_t n = g.size();
    std::vector<cplx> pts(n);
    std::vector<cplx> exps(n);
    for (std::size_t i = 0; i < n; ++i) exps[i] = b.samples.values[i].real() + u.values[i];

    std::size_t zero = g.cell_of(0.0);
    if (g.nodes[zero] != 0.0 && g.nodes[zero + 1] == 0.0) ++zero;
    if (g.nodes[zero] != 0.0) throw std::invalid_argument("omega_curve: grid must contain 0");

    std::vector<cplx> chords(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double h = g.nodes[i + 1] - g.nodes[i];
        cplx half = 0.5 * (exps[i + 1] - exps[i]);
        chords[i] = h * csinc(half) * std::exp(iunit * (exps[i] + half));
    }
    pts[zero] = 0.0;
    for (std::size_t i = zero; i + 1 < n; ++i) pts[i + 1] = pts[i] + chords[i];
    for (std::size_t i = zero; i > 0; --i) pts[i - 1] = pts[i] - chords[i - 1];

    return make_curve_map(g, pts, std::exp(iunit * exps.front()), std::exp(iunit * exps.back()));
}

extension_field extension_general(const tangent_angle& b, const sampled_line_function& u,
                                  const extension_field& tau) {
    const half_plane_grid& g = tau.grid;
    validate_half_plane_grid(g);
    if (u.grid.nodes != b.samples.grid.nodes)
        throw std::invalid_argument("extension_general: perturbation must share the angle grid");

    monotone_boundary_map omega = omega_curve(b, u);
    line_function_view ov = view_of(omega);
    const std::vector<double>& nodes = b.samples.grid.nodes;
    exponent_view pert{&b, &u};
    line_function_view od = derivative_view(pert, nodes);  // omega' = z_b' e^{iu}
    exponent_view base{&b, nullptr};
    line_function_view zd = derivative_view(base, nodes);  // z_b'

    curve_samples zb = gamma_u(b);
    monotone_boundary_map zb_map = curve_as_map(zb);
    line_function_view zv = view_of(zb_map);

    field_matrix tau_x = field_dx(g, tau.values);
    field_matrix tau_y = field_dy(g, tau.values);

    extension_field f;
    f.grid = g;
    f.values = make_field_matrix(g);
    f.dz = make_field_matrix(g);
    f.dzbar = make_field_matrix(g);
    f.boundary.resize(g.nx());
    for (std::size_t i = 0; i < g.nx(); ++i) f.boundary[i] = omega.eval(g.xgrid.nodes[i]);

    double sgn = g.upper ? 1.0 : -1.0;
    for (std::size_t j = 0; j < g.ny(); ++j) {
        double y = g.y_at(j);
        for (std::size_t i = 0; i < g.nx(); ++i) {
            double x = g.xgrid.nodes[i];

            cplx term1 = convolve_scaled(kernel_spec::phi, y, ov, x);
            cplx term1_x = convolve_scaled(kernel_spec::phi, y, od, x);
            cplx term1_y = sgn * convolve_scaled(kernel_spec::alpha, y, od, x);

            cplx num = term1_x;  // phi_y * omega' shares the numerator of R_y
            cplx den = convolve_scaled(kernel_spec::phi, y, zd, x);
            if (std::abs(den) < calibration::ry_denominator_floor)
                throw numerical_error("extension_general: smoothing denominator below the floor");
            cplx num_x = convolve_scaled_dx(kernel_spec::phi, y, od, x);
            cplx num_y = convolve_scaled_dy(kernel_spec::phi, y, od, x);
            cplx den_x = convolve_scaled_dx(kernel_spec::phi, y, zd, x);
            cplx den_y = convolve_scaled_dy(kernel_spec::phi, y, zd, x);
            cplx q = num / den;
            cplx q_x = (num_x * den - num * den_x) / (den * den);
            cplx q_y = (num_y * den - num * den_y) / (den * den);

            cplx smooth_tau = convolve_scaled(kernel_spec::phi, y, zv, x);
            cplx s_val = tau.values[j][i] - smooth_tau;
            cplx s_x = tau_x[j][i] - den;
            cplx s_y = tau_y[j][i] - sgn * convolve_scaled(kernel_spec::alpha, y, zd, x);

            f.values[j][i] = term1 + q * s_val;
            cplx dx = term1_x + q_x * s_val + q * s_x;
            cplx dy = term1_y + q_y * s_val + q * s_y;
            f.dz[j][i] = 0.5 * (dx - iunit * dy);
            f.dzbar[j][i] = 0.5 * (dx + iunit * dy);
        }
    }
    return f;
}

extension_field with_difference_derivatives(const extension_field& f) {
    extension_field out = f;
    field_matrix vx = field_dx(f.grid, f.values);
    field_matrix vy = field_dy(f.grid, f.values);
    for (std::size_t j = 0; j < f.grid.ny(); ++j) {
        for (std::size_t i = 0; i < f.grid.nx(); ++i) {
            out.dz[j][i] = 0.5 * (vx[j][i] - iunit * vy[j][i]);
            out.dzbar[j][i] = 0.5 * (vx[j][i] + iunit * vy[j][i]);
        }
    }
    return out;
}

}  // namespace wpc
