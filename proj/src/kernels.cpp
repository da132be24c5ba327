#include "wpc/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "wpc/errors.hpp"

namespace wpc {

namespace {

// 1 / integral of exp(-1/(1-x^2)) over [-1, 1].
constexpr double bump_norm = 2.2522836210435810105;

double bump(double x) {
    double q = 1.0 - x * x;
    if (q <= 0.0) return 0.0;
    return std::exp(-1.0 / q);
}

// Logarithmic derivative pieces of the bump: with g(x) = -1/(1-x^2),
// bump' = bump * g' and bump'' = bump * (g'' + g'^2).
double gprime(double x) {
    double q = 1.0 - x * x;
    return -2.0 * x / (q * q);
}

double gsecond(double x) {
    double q = 1.0 - x * x;
    return -2.0 * (1.0 + 3.0 * x * x) / (q * q * q);
}

double phi_val(double x) { return bump_norm * bump(x); }

double phi_d1(double x) {
    double b = bump(x);
    if (b == 0.0) return 0.0;
    return bump_norm * b * gprime(x);
}

double phi_d2(double x) {
    double b = bump(x);
    if (b == 0.0) return 0.0;
    double gp = gprime(x);
    return bump_norm * b * (gsecond(x) + gp * gp);
}

constexpr cplx iunit{0.0, 1.0};

}  // namespace

cplx kernel_eval(kernel_spec k, double x) {
    switch (k) {
        case kernel_spec::phi:
            return phi_val(x);
        case kernel_spec::psi_odd:
            return -phi_d1(x);
        case kernel_spec::psi_half:
            return 0.5 * (phi_d1(x) - iunit * (phi_val(x) + x * phi_d1(x)));
        case kernel_spec::alpha:
            return -x * phi_val(x);
    }
    throw std::invalid_argument("kernel_eval: unknown kernel");
}

cplx kernel_derivative(kernel_spec k, double x) {
    switch (k) {
        case kernel_spec::phi:
            return phi_d1(x);
        case kernel_spec::psi_odd:
            return -phi_d2(x);
        case kernel_spec::psi_half:
            return 0.5 * (phi_d2(x) - iunit * (2.0 * phi_d1(x) + x * phi_d2(x)));
        case kernel_spec::alpha:
            return -phi_val(x) - x * phi_d1(x);
    }
    throw std::invalid_argument("kernel_derivative: unknown kernel");
}

cplx kernel_scaled(kernel_spec k, double y, double x) {
    if (y == 0.0) throw numerical_error("kernel_scaled: zero scale");
    double ay = std::abs(y);
    return kernel_eval(k, x / ay) / ay;
}

line_function_view view_of(const sampled_line_function& u) {
    return line_function_view{[&u](double t) { return u.eval(t); }, &u.grid.nodes};
}

line_function_view view_of(const monotone_boundary_map& m) {
    return line_function_view{[&m](double t) { return m.eval(t); }, &m.grid.nodes};
}

namespace {

// 4-point Gauss-Legendre on [-1, 1].
constexpr double gl_x[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                            0.8611363115940526};
constexpr double gl_w[4] = {0.34785484513745386, 0.6521451548625461, 0.6521451548625461,
                            0.34785484513745386};

// Integrates kappa(s) * w(x - |y| s) ds over [-1, 1], splitting at the
// images of w's sample nodes so the piecewise-linear integrand is smooth
// on every piece. At least 48 pieces regardless of the node count.
cplx convolve_core(const std::function<cplx(double)>& kappa, double y,
                   const line_function_view& w, double x) {
    if (y == 0.0 || !std::isfinite(y)) throw numerical_error("convolve_scaled: bad kernel scale");
    double ay = std::abs(y);

    std::vector<double> cuts;
    cuts.push_back(-1.0);
    cuts.push_back(1.0);
    if (w.breakpoints) {
        const std::vector<double>& nodes = *w.breakpoints;
        double tlo = x - ay;
        double thi = x + ay;
        auto lo = std::lower_bound(nodes.begin(), nodes.end(), tlo);
        auto hi = std::upper_bound(nodes.begin(), nodes.end(), thi);
        for (auto it = lo; it != hi; ++it) {
            double s = (x - *it) / ay;
            if (s > -1.0 && s < 1.0) cuts.push_back(s);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    constexpr double max_piece = 2.0 / 48.0;
    cplx acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i];
        double b = cuts[i + 1];
        int sub = std::max(1, static_cast<int>(std::ceil((b - a) / max_piece)));
        double h = (b - a) / sub;
        for (int j = 0; j < sub; ++j) {
            double pa = a + j * h;
            double mid = pa + 0.5 * h;
            double half = 0.5 * h;
            for (int q = 0; q < 4; ++q) {
                double s = mid + half * gl_x[q];
                acc += gl_w[q] * half * kappa(s) * w.eval(x - ay * s);
            }
        }
    }
    return acc;
}

}  // namespace

cplx convolve_scaled_fn(const std::function<cplx(double)>& kappa, double y,
                        const line_function_view& w, double x) {
    return convolve_core(kappa, y, w, x);
}

cplx convolve_scaled(kernel_spec k, double y, const line_function_view& w, double x) {
    return convolve_core([k](double s) { return kernel_eval(k, s); }, y, w, x);
}

cplx convolve_scaled(kernel_spec k, double y, const sampled_line_function& w, double x) {
    return convolve_scaled(k, y, view_of(w), x);
}

cplx convolve_scaled_dx(kernel_spec k, double y, const line_function_view& w, double x) {
    double ay = std::abs(y);
    cplx v = convolve_core([k](double s) { return kernel_derivative(k, s); }, y, w, x);
    return v / ay;
}

cplx convolve_scaled_dy(kernel_spec k, double y, const line_function_view& w, double x) {
    // (s kappa(s))' = kappa + s kappa'.
    double ay = std::abs(y);
    double sgn = (y > 0.0) ? 1.0 : -1.0;
    cplx v = convolve_core(
        [k](double s) { return kernel_eval(k, s) + s * kernel_derivative(k, s); }, y, w, x);
    return -sgn * v / ay;
}

}  // namespace wpc
