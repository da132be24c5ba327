#include "wpc/welding.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wpc/errors.hpp"

namespace wpc {

namespace {

constexpr double pi = 3.14159265358979323846;

// Index range of the uniformly sampled window inside the engine tags.
std::pair<std::size_t, std::size_t> window_range(const zipper_engine& e) {
    std::size_t lo = 0;
    std::size_t hi = e.tags.size() - 1;
    while (lo < hi && e.tags[lo] < -e.window - 1e-9) ++lo;
    while (hi > lo && e.tags[hi] > e.window + 1e-9) --hi;
    return {lo, hi};
}

// Boundary evaluation is ill conditioned exactly at the recorded
// correspondence samples; push the query off them by a relative hair.
double nudged(const std::vector<double>& samples, double x) {
    double guard = 1e-11 * (1.0 + std::abs(x));
    auto it = std::lower_bound(samples.begin(), samples.end(), x);
    double near = guard + 1.0;
    if (it != samples.end()) near = std::min(near, std::abs(*it - x));
    if (it != samples.begin()) near = std::min(near, std::abs(*(it - 1) - x));
    return near < guard ? x + 2.0 * guard : x;
}

double segment_distance(cplx p, cplx a, cplx b) {
    cplx d = b - a;
    double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

riemann_map_pair build_side(const zipper_engine& e, const zipper_engine& fine, bool upper,
                            const curve_samples& c) {
    riemann_map_pair m;
    m.side = upper ? map_side::left : map_side::right;
    m.engine = e;
    const std::vector<double>& hs = upper ? e.h_upper : e.h_lower;
    const std::vector<double>& hs2 = upper ? fine.h_upper : fine.h_lower;

    auto [lo, hi] = window_range(e);
    double xmax = std::min(-hs[lo], hs[hi]);
    if (!(xmax > 0.1)) throw resolution_error("riemann map: boundary window collapsed");

    line_grid bgrid = make_line_grid(0.95 * xmax, 257);
    std::vector<cplx> bvals(bgrid.size());
    double delta = 0.0;
    for (std::size_t i = 0; i < bgrid.size(); ++i) {
        double x = nudged(hs2, nudged(hs, bgrid[i]));
        bvals[i] = zipper_boundary(e, x, upper).z;
        delta = std::max(delta, std::abs(bvals[i] - zipper_boundary(fine, x, upper).z));
    }
    std::size_t nb = bvals.size();
    cplx sl = (bvals[1] - bvals[0]) / (bgrid[1] - bgrid[0]);
    cplx sr = (bvals[nb - 1] - bvals[nb - 2]) / (bgrid[nb - 1] - bgrid[nb - 2]);
    m.boundary = make_curve_map(bgrid, bvals, sl, sr);
    m.convergence_delta = delta;

    line_grid tgrid{e.tags};
    m.correspondence = make_monotone_map(tgrid, hs);

    line_grid ig = make_line_grid(std::min(0.95 * xmax, 12.0), 257);
    half_plane_grid hg = make_half_plane_grid(ig, 4.0, 12, upper);
    field_matrix vals = make_field_matrix(hg);
    for (std::size_t j = 0; j < hg.ny(); ++j)
        for (std::size_t i = 0; i < hg.nx(); ++i)
            vals[j][i] = zipper_map(e, cplx(ig[i], hg.y_at(j)), upper).log_d;
    m.interior = unwrap_field(half_plane_field{hg, std::move(vals)});

    m.normalization.theta_star = e.theta_star;
    m.normalization.gauge = upper ? e.upper : e.lower;

    std::size_t i0 = e.tags.size(), i1 = e.tags.size();
    for (std::size_t k = lo; k <= hi; ++k) {
        if (e.tags[k] == 0.0) i0 = k;
        if (e.tags[k] == 1.0) i1 = k;
    }
    if (i0 >= e.tags.size() || i1 >= e.tags.size())
        throw numerical_error("riemann map: tag pins missing from the window");
    double arc = 0.0;
    for (std::size_t k = i0; k < i1; ++k)
        arc += std::abs(c.point_at(e.tags[k + 1]) - c.point_at(e.tags[k]));
    m.normalization.arc_unit = arc;

    double worst = 0.0;
    for (std::size_t k = lo; k + 1 <= hi; k += 8) {
        if (std::abs(e.tags[k]) > 4.0 || std::abs(e.tags[k + 1]) > 4.0) continue;
        double xm = 0.5 * (hs[k] + hs[k + 1]);
        cplx z = zipper_boundary(e, xm, upper).z;
        worst = std::max(worst, segment_distance(z, c.point_at(e.tags[k]), c.point_at(e.tags[k + 1])));
    }
    m.normalization.trace_gap = worst;
    return m;
}

// Bilinear sample of the coefficient field at w, clamped to the grid box.
cplx pull_coefficient(const beltrami_field& mu, cplx w, std::size_t& clamps) {
    const half_plane_grid& g = mu.grid;
    double x = w.real();
    double ay = g.upper ? w.imag() : -w.imag();
    bool moved = false;
    if (x < g.xgrid.nodes.front()) { x = g.xgrid.nodes.front(); moved = true; }
    if (x > g.xgrid.nodes.back()) { x = g.xgrid.nodes.back(); moved = true; }
    if (ay < g.ylevels.back()) { ay = g.ylevels.back(); moved = true; }
    if (ay > g.ylevels.front()) { ay = g.ylevels.front(); moved = true; }
    if (moved) ++clamps;
    std::size_t i = g.xgrid.cell_of(x);
    double tx = (x - g.xgrid.nodes[i]) / (g.xgrid.nodes[i + 1] - g.xgrid.nodes[i]);
    std::size_t j = 0;
    while (j + 2 < g.ny() && g.ylevels[j + 1] >= ay) ++j;
    double ty = (g.ylevels[j] - ay) / (g.ylevels[j] - g.ylevels[j + 1]);
    cplx top = mu.values[j][i] * (1.0 - tx) + mu.values[j][i + 1] * tx;
    cplx bot = mu.values[j + 1][i] * (1.0 - tx) + mu.values[j + 1][i + 1] * tx;
    return top * (1.0 - ty) + bot * ty;
}

}  // namespace

half_plane_field unwrap_field(const half_plane_field& f) {
    half_plane_field out = f;
    auto rebase = [](cplx& v, double ref) {
        v.imag(v.imag() - 2.0 * pi * std::round((v.imag() - ref) / (2.0 * pi)));
    };
    std::size_t ny = out.grid.ny(), nx = out.grid.nx();
    for (std::size_t i = 1; i < nx; ++i) rebase(out.values[0][i], out.values[0][i - 1].imag());
    for (std::size_t j = 1; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) rebase(out.values[j][i], out.values[j - 1][i].imag());
    for (std::size_t j = 1; j < ny; ++j)
        for (std::size_t i = 1; i < nx; ++i) {
            double jump = std::abs(out.values[j][i].imag() - out.values[j][i - 1].imag());
            if (jump > pi + 1e-9)
                throw unwrapping_error("unwrap_field: branch jump of " + std::to_string(jump) +
                                       " between horizontal neighbours");
        }
    return out;
}

monotone_boundary_map restrict_map(const monotone_boundary_map& m, double halfwidth) {
    std::vector<double> xs;
    std::vector<cplx> vs;
    for (std::size_t i = 0; i < m.grid.size(); ++i) {
        if (std::abs(m.grid[i]) <= halfwidth + 1e-12) {
            xs.push_back(m.grid[i]);
            vs.push_back(m.values[i]);
        }
    }
    if (xs.size() < 16) throw std::invalid_argument("restrict_map: too few nodes kept");
    line_grid g{xs};
    validate_line_grid(g);
    if (m.monotone_real) {
        std::vector<double> rv(vs.size());
        for (std::size_t i = 0; i < vs.size(); ++i) rv[i] = vs[i].real();
        return make_monotone_map(g, rv);
    }
    std::size_t n = vs.size();
    cplx sl = (vs[1] - vs[0]) / (xs[1] - xs[0]);
    cplx sr = (vs[n - 1] - vs[n - 2]) / (xs[n - 1] - xs[n - 2]);
    return make_curve_map(g, vs, sl, sr);
}

curve_maps riemann_maps(const curve_samples& c, std::size_t resolution) {
    zipper_engine e = build_zipper(c, resolution);
    zipper_engine fine = build_zipper(c, 2 * resolution);
    curve_maps out{build_side(e, fine, true, c), build_side(e, fine, false, c)};
    double shared = std::max(out.left.convergence_delta, out.right.convergence_delta);
    out.left.convergence_delta = shared;
    out.right.convergence_delta = shared;
    return out;
}

monotone_boundary_map boundary_correspondence(const riemann_map_pair& m, const curve_samples& c) {
    validate_monotone(m.correspondence);
    const zipper_engine& e = m.engine;
    std::size_t i0 = e.tags.size(), i1 = e.tags.size();
    for (std::size_t k = 0; k < e.tags.size(); ++k) {
        if (e.tags[k] == 0.0) i0 = k;
        if (e.tags[k] == 1.0) i1 = k;
    }
    const std::vector<double>& hs = m.side == map_side::left ? e.h_upper : e.h_lower;
    if (i0 >= e.tags.size() || hs[i0] != 0.0 || i1 >= e.tags.size() || hs[i1] != 1.0)
        throw certification_error("boundary correspondence: tag pins are off");
    if (m.normalization.trace_gap > 1e-2)
        throw certification_error("boundary correspondence: boundary trace misses the curve");
    if (std::abs(m.boundary.eval(0.0) - c.point_at(0.0)) > 1e-3 ||
        std::abs(m.boundary.eval(1.0) - c.point_at(1.0)) > 1e-3)
        throw certification_error("boundary correspondence: pinned points are off the curve");
    return m.correspondence;
}

welding_record welding_map(const riemann_map_pair& left, const riemann_map_pair& right,
                           const curve_samples& c) {
    if (left.side != map_side::left || right.side != map_side::right)
        throw std::invalid_argument("welding_map: pass the left and right maps in order");
    if (left.engine.tags.size() != right.engine.tags.size() ||
        left.engine.resolution != right.engine.resolution)
        throw std::invalid_argument("welding_map: sides come from different constructions");
    validate_curve(c);

    const std::vector<double>& ys = left.engine.h_upper;
    const std::vector<double>& xs = right.engine.h_lower;
    auto [lo, hi] = window_range(left.engine);

    std::vector<double> px(xs.begin() + static_cast<std::ptrdiff_t>(lo),
                           xs.begin() + static_cast<std::ptrdiff_t>(hi + 1));
    std::vector<double> py(ys.begin() + static_cast<std::ptrdiff_t>(lo),
                           ys.begin() + static_cast<std::ptrdiff_t>(hi + 1));

    double xmax = std::min(-px.front(), px.back());
    if (!(xmax > 0.1)) throw resolution_error("welding_map: sewing window collapsed");
    std::size_t n = px.size() | 1;
    line_grid hgrid = make_line_grid(0.95 * xmax, n);
    std::vector<double> hv(hgrid.size());
    for (std::size_t i = 0; i < hgrid.size(); ++i) hv[i] = interp_linear(px, py, hgrid[i]);

    welding_record rec;
    rec.h = make_monotone_map(hgrid, hv);
    rec.h1 = left.correspondence;
    rec.h2 = right.correspondence;

    std::vector<double> mids(px.size() - 1), slopes(px.size() - 1);
    for (std::size_t k = 0; k + 1 < px.size(); ++k) {
        mids[k] = 0.5 * (px[k] + px[k + 1]);
        slopes[k] = std::log((py[k + 1] - py[k]) / (px[k + 1] - px[k]));
    }
    line_grid sgrid = make_line_grid(std::min(8.0, 0.95 * xmax), 513);
    std::vector<cplx> sv(sgrid.size());
    for (std::size_t i = 0; i < sgrid.size(); ++i) sv[i] = interp_linear(mids, slopes, sgrid[i]);
    rec.log_h_prime = make_sampled(sgrid, sv);
    return rec;
}

analytic_field prelog_derivative(const riemann_map_pair& m) {
    analytic_field out;
    out.field = unwrap_field(m.interior);
    half_plane_field deriv{out.field.grid, field_dx(out.field.grid, out.field.values)};
    out.report = dirichlet_seminorm(deriv);
    return out;
}

analytic_field schwarzian(const half_plane_field& f_prime_log) {
    const half_plane_grid& g = f_prime_log.grid;
    field_matrix n = field_dx(g, f_prime_log.values);
    field_matrix np = field_dx(g, n);
    field_matrix s = make_field_matrix(g);
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i) s[j][i] = np[j][i] - 0.5 * n[j][i] * n[j][i];
    analytic_field out;
    out.field = half_plane_field{g, std::move(s)};
    out.report = b2_norm(out.field);
    norm_report l2 = bers_l2_norm(out.field);
    out.report.values["bers_l2"] = l2.value("bers_l2");
    return out;
}

beltrami_field beltrami_compose(const beltrami_field& mu_f, const extension_field& h,
                                std::size_t* clamped) {
    beltrami_field mu_h = beltrami_of_field(h);
    std::size_t clamps = 0;
    field_matrix out = make_field_matrix(h.grid);
    for (std::size_t j = 0; j < h.grid.ny(); ++j) {
        for (std::size_t i = 0; i < h.grid.nx(); ++i) {
            cplx dz = h.dz[j][i];
            cplx tau = std::conj(dz) / dz;
            cplx mf = pull_coefficient(mu_f, h.values[j][i], clamps);
            cplx mh = mu_h.values[j][i];
            cplx den = 1.0 + std::conj(mh) * mf * tau;
            if (std::abs(den) < 1e-6)
                throw degeneracy_error("beltrami_compose: denominator collapse");
            out[j][i] = (mh + mf * tau) / den;
        }
    }
    beltrami_field result = make_beltrami_field(h.grid, std::move(out));
    if (result.sup_norm >= 1.0)
        throw certification_error("beltrami_compose: composed coefficient reaches 1");
    if (clamped) *clamped = clamps;
    return result;
}

extension_field beurling_ahlfors_extension(const monotone_boundary_map& h) {
    if (!h.monotone_real)
        throw std::invalid_argument("beurling_ahlfors_extension: map must be real and increasing");
    validate_monotone(h);
    const line_grid& xg = h.grid;
    std::size_t nx = xg.size();

    std::vector<double> cum(nx, 0.0);
    for (std::size_t i = 0; i + 1 < nx; ++i) {
        double dx = xg[i + 1] - xg[i];
        cum[i + 1] = cum[i] + 0.5 * (h.values[i].real() + h.values[i + 1].real()) * dx;
    }
    double v0 = h.values.front().real(), vn = h.values.back().real();
    double s0 = h.slope_left.real(), sn = h.slope_right.real();
    auto antider = [&](double t) {
        if (t <= xg.nodes.front()) {
            double d = xg.nodes.front() - t;
            return -(v0 * d - 0.5 * s0 * d * d);
        }
        if (t >= xg.nodes.back()) {
            double d = t - xg.nodes.back();
            return cum[nx - 1] + vn * d + 0.5 * sn * d * d;
        }
        std::size_t i = xg.cell_of(t);
        double dt = t - xg.nodes[i];
        double ht = h.eval(t).real();
        return cum[i] + 0.5 * (h.values[i].real() + ht) * dt;
    };

    double ymax = std::max(0.5, std::min(4.0, 0.5 * xg.halfwidth()));
    half_plane_grid g = make_half_plane_grid(xg, ymax, 12, true);
    extension_field f;
    f.grid = g;
    f.values = make_field_matrix(g);
    f.dz = make_field_matrix(g);
    f.dzbar = make_field_matrix(g);
    f.boundary.resize(nx);
    for (std::size_t i = 0; i < nx; ++i) f.boundary[i] = h.values[i].real();

    for (std::size_t j = 0; j < g.ny(); ++j) {
        double y = g.y_at(j);
        for (std::size_t i = 0; i < nx; ++i) {
            double x = xg[i];
            double a = (antider(x + y) - antider(x)) / y;
            double b = (antider(x) - antider(x - y)) / y;
            double hx = h.eval(x).real();
            double hp = h.eval(x + y).real();
            double hm = h.eval(x - y).real();
            double ax = (hp - hx) / y, bx = (hx - hm) / y;
            double ay = (hp - a) / y, by = (hm - b) / y;
            cplx fx(0.5 * (ax + bx), ax - bx);
            cplx fy(0.5 * (ay + by), ay - by);
            f.values[j][i] = cplx(0.5 * (a + b), a - b);
            f.dz[j][i] = 0.5 * (fx - cplx(0.0, 1.0) * fy);
            f.dzbar[j][i] = 0.5 * (fx + cplx(0.0, 1.0) * fy);
        }
    }
    return f;
}

}  // namespace wpc
