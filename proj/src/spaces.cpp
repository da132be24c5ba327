#include "wpc/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wpc/calibration.hpp"
#include "wpc/errors.hpp"

namespace wpc {

namespace {

constexpr double pi = std::numbers::pi;

std::string describe_grid(const line_grid& g) {
    std::ostringstream os;
    os << g.size() << " nodes on [" << g.nodes.front() << ", " << g.nodes.back() << "]";
    return os.str();
}

// Trapezoid weights of the grid cells.
std::vector<double> trapezoid_weights(const line_grid& g) {
    std::vector<double> w(g.size(), 0.0);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        double h = g.nodes[i + 1] - g.nodes[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}

// Integral of u over [a, b] using the sampled values, with the endpoints
// entering by interpolation.
cplx window_integral(const sampled_line_function& u, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("window_integral: empty interval");
    const line_grid& g = u.grid;
    a = std::max(a, g.nodes.front());
    b = std::min(b, g.nodes.back());
    std::size_t ia = g.cell_of(a);
    std::size_t ib = g.cell_of(b);
    if (ia == ib) return 0.5 * (u.eval(a) + u.eval(b)) * (b - a);
    cplx acc = 0.5 * (u.eval(a) + u.values[ia + 1]) * (g.nodes[ia + 1] - a);
    for (std::size_t i = ia + 1; i < ib; ++i)
        acc += 0.5 * (u.values[i] + u.values[i + 1]) * (g.nodes[i + 1] - g.nodes[i]);
    acc += 0.5 * (u.values[ib] + u.eval(b)) * (b - g.nodes[ib]);
    return acc;
}

// Same quadrature applied to a transform of the samples.
double window_integral_abs(const sampled_line_function& u, double a, double b, cplx center,
                           double (*f)(double)) {
    sampled_line_function t = u;
    for (cplx& v : t.values) v = f(std::abs(v - center));
    return window_integral(t, a, b).real();
}

double ident(double r) { return r; }
double square(double r) { return r * r; }
double fourth(double r) { return r * r * r * r; }
double expabs(double r) { return std::exp(r); }

}  // namespace

double norm_report::value(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw std::invalid_argument("norm_report: missing key " + key);
    return it->second;
}

cplx interval_mean(const sampled_line_function& u, double a, double b) {
    return window_integral(u, a, b) / (b - a);
}

norm_report h12_seminorm(const sampled_line_function& u) {
    const line_grid& g = u.grid;
    validate_line_grid(g);
    std::size_t n = g.size();
    double L = g.halfwidth();
    double delta = 2.0 * g.max_spacing();

    std::vector<double> w = trapezoid_weights(g);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = g.nodes[j] - g.nodes[i];
            if (d < delta) continue;
            double diff = std::abs(u.values[j] - u.values[i]);
            acc += 2.0 * w[i] * w[j] * diff * diff / (d * d);
        }
    }

    norm_report rep;
    rep.grid_note = describe_grid(g);

    cplx cl = u.tail_left();
    cplx cr = u.tail_right();
    if (std::abs(cl - cr) > 1e-12 * (1.0 + std::abs(cl) + std::abs(cr))) {
        rep.notes.push_back(
            "tail values differ; cross-tail contribution diverges logarithmically and is omitted, "
            "the reported value is window-only");
    } else {
        // One side in the window, the other beyond it: the inner integral
        // has the closed form  int_{L}^{inf} dt/(t-s)^2 = 1/(L-s).
        double tails = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = g.nodes[i];
            double diff = std::abs(u.values[i] - cl);
            if (diff == 0.0) continue;
            double kl = (L + s > delta) ? 1.0 / (L + s) : 0.0;
            double kr = (L - s > delta) ? 1.0 / (L - s) : 0.0;
            tails += 2.0 * w[i] * diff * diff * (kl + kr);
        }
        acc += tails;
    }

    double sq = acc / (4.0 * pi * pi);
    rep.values["h12_sq"] = sq;
    rep.values["h12"] = std::sqrt(sq);
    rep.values["exclusion_band"] = delta;
    return rep;
}

namespace {

struct interval_osc {
    double a, b, osc;
};

// Mean oscillation of u over [a, b].
double oscillation(const sampled_line_function& u, double a, double b) {
    cplx mean = interval_mean(u, a, b);
    return window_integral_abs(u, a, b, mean, ident) / (b - a);
}

// Walks the dyadic family of [-L, L]; intervals holding fewer than
// min_cells grid cells are not descended into.
template <typename Fn>
void for_dyadic(const line_grid& g, std::size_t min_cells, Fn&& fn) {
    double L = g.halfwidth();
    double avg_cell = 2.0 * L / static_cast<double>(g.size() - 1);
    for (int level = 0;; ++level) {
        std::size_t pieces = static_cast<std::size_t>(1) << level;
        double len = 2.0 * L / static_cast<double>(pieces);
        if (len < static_cast<double>(min_cells) * avg_cell) break;
        for (std::size_t k = 0; k < pieces; ++k) {
            double a = -L + static_cast<double>(k) * len;
            fn(a, a + len, level);
        }
        if (len <= 2.0 * static_cast<double>(min_cells) * avg_cell) break;
    }
}

}  // namespace

norm_report bmo_norm(const sampled_line_function& u) {
    validate_line_grid(u.grid);
    norm_report rep;
    rep.grid_note = describe_grid(u.grid);
    interval_osc best{0.0, 0.0, -1.0};
    int levels = 0;
    for_dyadic(u.grid, 4, [&](double a, double b, int level) {
        double osc = oscillation(u, a, b);
        if (osc > best.osc) best = {a, b, osc};
        levels = std::max(levels, level + 1);
    });
    rep.values["bmo"] = std::max(best.osc, 0.0);
    rep.values["level_count"] = static_cast<double>(levels);
    std::ostringstream os;
    os << "maximizing interval [" << best.a << ", " << best.b << "]";
    rep.notes.push_back(os.str());
    return rep;
}

norm_report vmo_modulus(const sampled_line_function& u, const std::vector<double>& scales) {
    validate_line_grid(u.grid);
    norm_report rep;
    rep.grid_note = describe_grid(u.grid);
    for (double scale : scales) {
        if (!(scale > 0.0)) throw std::invalid_argument("vmo_modulus: scales must be positive");
        double worst = 0.0;
        for_dyadic(u.grid, 4, [&](double a, double b, int) {
            if (b - a <= scale) worst = std::max(worst, oscillation(u, a, b));
        });
        std::ostringstream key;
        key << "vmo@" << scale;
        rep.values[key.str()] = worst;
    }
    return rep;
}

norm_report dirichlet_seminorm(const half_plane_field& derivative) {
    validate_half_plane_grid(derivative.grid);
    const field_matrix& v = derivative.values;
    double sq = integrate_box(derivative.grid, [&](std::size_t j, std::size_t i) {
        double a = std::abs(v[j][i]);
        return a * a;
    });
    norm_report rep;
    rep.grid_note = describe_grid(derivative.grid.xgrid);
    rep.values["dirichlet_sq"] = sq / pi;
    rep.values["dirichlet"] = std::sqrt(sq / pi);
    return rep;
}

norm_report bloch_norm(const half_plane_field& derivative) {
    validate_half_plane_grid(derivative.grid);
    double sup = 0.0;
    for (std::size_t j = 0; j < derivative.grid.ny(); ++j)
        for (std::size_t i = 0; i < derivative.grid.nx(); ++i)
            sup = std::max(sup, std::abs(derivative.values[j][i]) * derivative.grid.ylevels[j]);
    norm_report rep;
    rep.values["bloch"] = sup;
    return rep;
}

norm_report b2_norm(const half_plane_field& phi) {
    validate_half_plane_grid(phi.grid);
    double sup = 0.0;
    for (std::size_t j = 0; j < phi.grid.ny(); ++j) {
        double y2 = phi.grid.ylevels[j] * phi.grid.ylevels[j];
        for (std::size_t i = 0; i < phi.grid.nx(); ++i)
            sup = std::max(sup, std::abs(phi.values[j][i]) * y2);
    }
    norm_report rep;
    rep.values["b2"] = sup;
    return rep;
}

norm_report bers_l2_norm(const half_plane_field& phi) {
    validate_half_plane_grid(phi.grid);
    double sq = integrate_box(phi.grid, [&](std::size_t j, std::size_t i) {
        double a = std::abs(phi.values[j][i]);
        double y = phi.grid.ylevels[j];
        return a * a * y * y;
    });
    norm_report rep;
    rep.values["bers_l2"] = std::sqrt(sq / pi);
    return rep;
}

beltrami_field make_beltrami_field(const half_plane_grid& g, field_matrix values) {
    validate_half_plane_grid(g);
    if (values.size() != g.ny()) throw std::invalid_argument("make_beltrami_field: level mismatch");
    for (const auto& row : values)
        if (row.size() != g.nx()) throw std::invalid_argument("make_beltrami_field: row mismatch");
    beltrami_field bf;
    bf.grid = g;
    bf.values = std::move(values);
    double sup = 0.0;
    for (const auto& row : bf.values)
        for (const cplx& m : row) sup = std::max(sup, std::abs(m));
    bf.sup_norm = sup;
    double sq = integrate_box(g, [&](std::size_t j, std::size_t i) {
        double a = std::abs(bf.values[j][i]);
        double y = g.ylevels[j];
        return a * a / (y * y);
    });
    bf.wp_energy = std::sqrt(sq / pi);
    return bf;
}

norm_report wp_norm(const beltrami_field& mu) {
    norm_report rep;
    rep.values["sup"] = mu.sup_norm;
    rep.values["energy"] = mu.wp_energy;
    rep.values["wp"] = mu.sup_norm + mu.wp_energy;
    if (mu.sup_norm >= 1.0)
        rep.notes.push_back("sup norm at or above 1: field is not uniformly quasiconformal");
    return rep;
}

norm_report john_nirenberg_probe(const sampled_line_function& u, double a, double b,
                                 const std::vector<double>& thresholds) {
    if (!(a < b)) throw std::invalid_argument("john_nirenberg_probe: empty interval");
    cplx mean = interval_mean(u, a, b);
    norm_report rep;
    rep.grid_note = describe_grid(u.grid);

    // Distribution of |u - u_I| over a dense uniform scan of the interval.
    constexpr int scan = 4096;
    for (double lam : thresholds) {
        int hits = 0;
        for (int k = 0; k < scan; ++k) {
            double x = a + (b - a) * (k + 0.5) / scan;
            if (std::abs(u.eval(x) - mean) >= lam) ++hits;
        }
        std::ostringstream key;
        key << "frac@" << lam;
        rep.values[key.str()] = static_cast<double>(hits) / scan;
    }

    double len = b - a;
    double expmean = window_integral_abs(u, a, b, mean, expabs) / len;
    rep.values["exp_mean_minus_one"] = expmean - 1.0;
    rep.values["p1_mean"] = window_integral_abs(u, a, b, mean, ident) / len;
    rep.values["p2_mean"] = window_integral_abs(u, a, b, mean, square) / len;
    rep.values["p4_mean"] = window_integral_abs(u, a, b, mean, fourth) / len;

    double bmo = bmo_norm(u).value("bmo");
    rep.values["bmo"] = bmo;
    if (bmo < calibration::jn_c2) {
        double bound = calibration::jn_c1 * bmo / (calibration::jn_c2 - bmo);
        rep.values["exp_bound"] = bound;
        rep.values["exp_bound_ok"] = (expmean - 1.0 <= bound) ? 1.0 : 0.0;
    } else {
        rep.notes.push_back("bmo norm exceeds the calibrated small-norm threshold; "
                            "exponential bound not applicable");
        rep.values["exp_bound_ok"] = 0.0;
    }
    return rep;
}

half_plane_field poisson_extend(const sampled_line_function& u, const half_plane_grid& g) {
    validate_half_plane_grid(g);
    validate_line_grid(u.grid);
    double L = u.grid.halfwidth();
    cplx cl = u.tail_left();
    cplx cr = u.tail_right();

    half_plane_field out;
    out.grid = g;
    out.values = make_field_matrix(g);

    // Angle substitution t = x + |y| tan(theta) turns the Poisson integral
    // into (1/pi) int u(x + |y| tan theta) d theta; composite Simpson in
    // theta resolves the kernel peak at every level equally well.
    constexpr int m = 1024;  // Simpson panels over the window part
    for (std::size_t j = 0; j < g.ny(); ++j) {
        double y = g.ylevels[j];
        for (std::size_t i = 0; i < g.nx(); ++i) {
            double x = g.xgrid.nodes[i];
            double th_lo = std::atan((-L - x) / y);
            double th_hi = std::atan((L - x) / y);
            cplx acc = 0.0;
            double h = (th_hi - th_lo) / (2 * m);
            for (int k = 0; k <= 2 * m; ++k) {
                double th = th_lo + h * k;
                double wgt = (k == 0 || k == 2 * m) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
                acc += wgt * u.eval(x + y * std::tan(th));
            }
            acc *= h / 3.0;
            acc += cl * (th_lo + 0.5 * pi);
            acc += cr * (0.5 * pi - th_hi);
            out.values[j][i] = acc / pi;
        }
    }
    return out;
}

}  // namespace wpc
