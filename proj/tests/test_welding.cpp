#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "wpc/curve.hpp"
#include "wpc/errors.hpp"
#include "wpc/fixtures.hpp"
#include "wpc/grid.hpp"
#include "wpc/spaces.hpp"
#include "wpc/welding.hpp"
#include "wpc/zipper.hpp"

using namespace wpc;

namespace {

const cplx iunit{0.0, 1.0};

curve_samples curve_from_profile(const std::string& name, double amplitude) {
    line_grid g = make_line_grid(8.0, 513);
    tangent_angle b = fixtures::profile_angle(name, amplitude, g);
    auto [c, rec] = normalize_curve(gamma_u(b));
    return c;
}

// Window part of the engine correspondence as position/tag sample vectors.
void window_samples(const zipper_engine& e, bool upper, std::vector<double>& pos,
                    std::vector<double>& tag) {
    const std::vector<double>& hs = upper ? e.h_upper : e.h_lower;
    for (std::size_t k = 0; k < e.tags.size(); ++k) {
        if (std::abs(e.tags[k]) <= e.window + 1e-9) {
            pos.push_back(hs[k]);
            tag.push_back(e.tags[k]);
        }
    }
}

// log of the derivative of the inverse correspondence, from chord slopes
// at pair midpoints.
struct inverse_log_slope {
    std::vector<double> mids;
    std::vector<double> logs;

    inverse_log_slope(const std::vector<double>& pos, const std::vector<double>& tag) {
        for (std::size_t k = 0; k + 1 < pos.size(); ++k) {
            mids.push_back(0.5 * (pos[k] + pos[k + 1]));
            logs.push_back(std::log((tag[k + 1] - tag[k]) / (pos[k + 1] - pos[k])));
        }
    }
    double at(double x) const { return interp_linear(mids, logs, x); }
};

// Linear extrapolation of the two rows nearest the boundary to y = 0.
cplx boundary_row_value(const half_plane_field& f, std::size_t i) {
    std::size_t ny = f.grid.ny();
    return 2.0 * f.values[ny - 1][i] - f.values[ny - 2][i];
}

// Quasiconformal test map w + eps * P(w/3) * exp(-|w|^2 / s^2) with a real
// quadratic P, preserving the real axis; Wirtinger derivatives in closed
// form.
struct test_qc_map {
    double eps = 0.1;
    double s = 2.0;
    double c0 = 0.0, c1 = 1.0, c2 = 0.0;

    cplx poly(cplx w) const { return c0 + c1 * (w / 3.0) + c2 * (w / 3.0) * (w / 3.0); }
    cplx poly_d(cplx w) const { return c1 / 3.0 + 2.0 * c2 * w / 9.0; }
    double envelope(cplx w) const { return std::exp(-std::norm(w) / (s * s)); }

    cplx value(cplx w) const { return w + eps * poly(w) * envelope(w); }
    cplx dz(cplx w) const {
        return 1.0 + eps * envelope(w) * (poly_d(w) - poly(w) * std::conj(w) / (s * s));
    }
    cplx dzbar(cplx w) const { return -eps * envelope(w) * poly(w) * w / (s * s); }
    cplx mu(cplx w) const { return dzbar(w) / dz(w); }
};

extension_field field_of_map(const test_qc_map& m, const half_plane_grid& g) {
    extension_field f;
    f.grid = g;
    f.values = make_field_matrix(g);
    f.dz = make_field_matrix(g);
    f.dzbar = make_field_matrix(g);
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i) {
            cplx w(g.xgrid[i], g.y_at(j));
            f.values[j][i] = m.value(w);
            f.dz[j][i] = m.dz(w);
            f.dzbar[j][i] = m.dzbar(w);
        }
    f.boundary.resize(g.nx());
    for (std::size_t i = 0; i < g.nx(); ++i) f.boundary[i] = m.value(cplx(g.xgrid[i], 0.0));
    return f;
}

}  // namespace

TEST_CASE("flat curve yields identity maps and trivial sewing") {
    curve_samples c = curve_from_profile("bump", 0.0);
    curve_maps maps = riemann_maps(c, 1024);

    double worst = 0.0;
    for (double x : {-5.0, -1.3, 0.4, 4.2}) {
        worst = std::max(worst, std::abs(maps.left.boundary.eval(x) - x));
        worst = std::max(worst, std::abs(maps.right.boundary.eval(x) - x));
    }
    CHECK(worst < 1e-4);

    double field_mag = 0.0;
    for (const auto& row : maps.left.interior.values)
        for (cplx v : row) field_mag = std::max(field_mag, std::abs(v));
    for (const auto& row : maps.right.interior.values)
        for (cplx v : row) field_mag = std::max(field_mag, std::abs(v));
    CHECK(field_mag < 1e-4);

    CHECK(maps.left.convergence_delta < 1e-6);
    CHECK(maps.left.normalization.arc_unit == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(maps.right.normalization.arc_unit == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(maps.left.normalization.trace_gap < 1e-4);

    analytic_field pre = prelog_derivative(maps.left);
    CHECK(pre.report.value("dirichlet") < 1e-3);

    welding_record rec = welding_map(maps.left, maps.right, c);
    double h_gap = 0.0;
    for (double x = -6.0; x <= 6.0; x += 0.37) h_gap = std::max(h_gap, std::abs(rec.h.eval_real(x) - x));
    CHECK(h_gap < 1e-5);
    double lg = 0.0;
    for (cplx v : rec.log_h_prime.values) lg = std::max(lg, std::abs(v));
    CHECK(lg < 1e-5);
}

TEST_CASE("rotated line is mapped by the rotation") {
    double ang = 0.4;
    cplx rot = std::exp(iunit * ang);
    line_grid g = make_line_grid(8.0, 129);
    curve_samples c;
    c.tags = g.nodes;
    c.points.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) c.points[i] = rot * g[i];
    c.dir_left = rot;
    c.dir_right = rot;

    curve_maps maps = riemann_maps(c, 1024);
    double worst = 0.0;
    for (double x : {-3.0, -0.7, 0.5, 2.25}) {
        worst = std::max(worst, std::abs(maps.left.boundary.eval(x) - rot * x));
        worst = std::max(worst, std::abs(maps.right.boundary.eval(x) - rot * x));
    }
    CHECK(worst < 1e-4);

    for (cplx w : {cplx(0.3, 0.8), cplx(-1.2, 2.5)}) {
        CHECK(std::abs(zipper_map(maps.left.engine, w, true).z - rot * w) < 1e-4);
        CHECK(std::abs(zipper_map(maps.right.engine, std::conj(w), false).z - rot * std::conj(w)) <
              1e-4);
    }

    double gap = 0.0;
    for (const auto& row : maps.left.interior.values)
        for (cplx v : row) gap = std::max(gap, std::abs(v - iunit * ang));
    CHECK(gap < 1e-4);
}

TEST_CASE("bump curve correspondences, boundary relations, sewing identity") {
    curve_samples c = curve_from_profile("bump", 0.3);
    curve_maps maps = riemann_maps(c, 2048);

    CHECK(maps.left.convergence_delta < 1e-3);
    CHECK(maps.left.normalization.arc_unit == doctest::Approx(1.0).epsilon(1e-3));

    monotone_boundary_map h1 = boundary_correspondence(maps.left, c);
    monotone_boundary_map h2 = boundary_correspondence(maps.right, c);
    CHECK(h1.eval_real(0.0) == 0.0);
    CHECK(h2.eval_real(0.0) == 0.0);

    // Boundary trace of the log-derivative field against the direct
    // correspondence data: real part from inverse chord slopes, imaginary
    // part from the tangent angle.
    std::vector<double> pos, tag;
    window_samples(maps.left.engine, true, pos, tag);
    inverse_log_slope inv_slope(pos, tag);
    tangent_angle b = tangent_angle_from_curve(c);

    const half_plane_field& fld = maps.left.interior;
    double re_gap = 0.0, im_gap = 0.0;
    for (std::size_t i = 0; i < fld.grid.nx(); i += 8) {
        double x = fld.grid.xgrid[i];
        if (std::abs(x) > 3.0) continue;
        cplx v0 = boundary_row_value(fld, i);
        double hinv = interp_linear(pos, tag, x);
        re_gap = std::max(re_gap, std::abs(v0.real() - inv_slope.at(x)));
        im_gap = std::max(im_gap, std::abs(v0.imag() - b.at(hinv)));
    }
    CHECK(re_gap < 2e-3);
    CHECK(im_gap < 2e-3);

    welding_record rec = welding_map(maps.left, maps.right, c);
    double W = maps.left.engine.window;
    monotone_boundary_map h1r = restrict_map(rec.h1, W);
    monotone_boundary_map h2r = restrict_map(rec.h2, W);
    monotone_boundary_map comp = compose_maps(h1r, invert_monotone(h2r, 4097));
    double weld_gap = 0.0;
    for (double x = -0.8 * W; x <= 0.8 * W; x += 0.09) {
        weld_gap = std::max(weld_gap, std::abs(comp.eval_real(x) - rec.h.eval_real(x)));
    }
    CHECK(weld_gap < 2e-3);

    // Mirror curve: the side maps swap through conjugation, and the sewing
    // map inverts.
    curve_samples cm = reflect_J(c);
    curve_maps mm = riemann_maps(cm, 2048);
    double sym_gap = 0.0;
    for (double x = -6.0; x <= 6.0; x += 0.5) {
        sym_gap = std::max(sym_gap,
                           std::abs(mm.left.boundary.eval(x) - std::conj(maps.right.boundary.eval(x))));
        sym_gap = std::max(sym_gap,
                           std::abs(mm.right.boundary.eval(x) - std::conj(maps.left.boundary.eval(x))));
    }
    CHECK(sym_gap < 2e-3);

    welding_record rm = welding_map(mm.left, mm.right, cm);
    monotone_boundary_map hinv = invert_monotone(restrict_map(rec.h, W), 4097);
    // The inverse carries data only where the forward map has nodes; past the
    // grid ends both maps continue by affine tails, so clip the comparison to
    // the stretch covered by real samples on both sides.
    double ha = 0.99 * rec.h.grid.halfwidth();
    double lo = std::max({rec.h.eval_real(-ha), -0.99 * rm.h.grid.halfwidth(), -0.7 * W});
    double hi = std::min({rec.h.eval_real(ha), 0.99 * rm.h.grid.halfwidth(), 0.7 * W});
    CHECK(lo < -4.0);
    CHECK(hi > 4.0);
    double inv_gap = 0.0;
    for (double x = lo; x <= hi; x += 0.11) {
        inv_gap = std::max(inv_gap, std::abs(rm.h.eval_real(x) - hinv.eval_real(x)));
    }
    CHECK(inv_gap < 2e-3);
}

TEST_CASE("sewing seminorm and average extension are stable under doubling") {
    curve_samples c = curve_from_profile("bump", 0.3);
    curve_maps r1 = riemann_maps(c, 768);
    curve_maps r2 = riemann_maps(c, 1536);
    welding_record w1 = welding_map(r1.left, r1.right, c);
    welding_record w2 = welding_map(r2.left, r2.right, c);

    double n1 = h12_seminorm(w1.log_h_prime).value("h12");
    double n2 = h12_seminorm(w2.log_h_prime).value("h12");
    CHECK(n1 > 0.01);
    CHECK(std::abs(n1 - n2) < 0.1 * n2);

    extension_field f1 = beurling_ahlfors_extension(w1.h);
    extension_field f2 = beurling_ahlfors_extension(w2.h);
    beltrami_field m1 = beltrami_of_field(f1);
    beltrami_field m2 = beltrami_of_field(f2);
    CHECK(m1.sup_norm < 1.0);
    CHECK(m2.sup_norm < 1.0);
    CHECK(m1.wp_energy > 0.0);
    CHECK(std::isfinite(m1.wp_energy));
    CHECK(std::abs(m1.wp_energy - m2.wp_energy) < 0.1 * m2.wp_energy);
}

TEST_CASE("log-derivative packaging leaves a closed form alone") {
    line_grid xg = make_line_grid(6.0, 193);
    half_plane_grid g = make_half_plane_grid(xg, 4.0, 8, true);
    field_matrix vals = make_field_matrix(g);
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i) {
            cplx z(xg[i], g.y_at(j));
            cplx q = z + 2.0 * iunit;
            vals[j][i] = std::log(1.0 - 1.0 / (q * q));
        }
    riemann_map_pair m;
    m.interior = half_plane_field{g, vals};
    analytic_field out = prelog_derivative(m);

    double gap = 0.0;
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i)
            gap = std::max(gap, std::abs(out.field.values[j][i] - vals[j][i]));
    CHECK(gap < 1e-6);
    CHECK(out.report.value("dirichlet") > 0.0);
    CHECK(out.report.value("dirichlet") < 1.0);
}

TEST_CASE("schwarzian oracles") {
    auto log_dmob = [](cplx z) {
        // f = (2z+1)/(z+3), f' = 5/(z+3)^2
        return std::log(5.0) - 2.0 * std::log(z + 3.0);
    };

    SUBCASE("moebius maps are annihilated") {
        line_grid xg = make_line_grid(1.0, 801);
        half_plane_grid g = make_half_plane_grid(xg, 32.0, 6, true);
        field_matrix vals = make_field_matrix(g);
        for (std::size_t j = 0; j < g.ny(); ++j)
            for (std::size_t i = 0; i < g.nx(); ++i)
                vals[j][i] = log_dmob(cplx(xg[i], g.y_at(j)));
        analytic_field sw = schwarzian(half_plane_field{g, vals});
        double worst = 0.0;
        for (std::size_t j = 0; j < g.ny(); ++j)
            for (std::size_t i = 2; i + 2 < g.nx(); ++i)
                worst = std::max(worst, std::abs(sw.field.values[j][i]));
        CHECK(worst < 1e-5);
    }

    SUBCASE("square map against the symbolic value") {
        line_grid xg = make_line_grid(2.0, 801);
        half_plane_grid g = make_half_plane_grid(xg, 32.0, 6, true);
        field_matrix vals = make_field_matrix(g);
        for (std::size_t j = 0; j < g.ny(); ++j)
            for (std::size_t i = 0; i < g.nx(); ++i)
                vals[j][i] = std::log(2.0 * cplx(xg[i], g.y_at(j)));
        analytic_field sw = schwarzian(half_plane_field{g, vals});
        double worst = 0.0;
        for (std::size_t j = 0; j < g.ny(); ++j)
            for (std::size_t i = 2; i + 2 < g.nx(); ++i) {
                cplx z(xg[i], g.y_at(j));
                worst = std::max(worst, std::abs(sw.field.values[j][i] + 1.5 / (z * z)));
            }
        CHECK(worst < 1e-4);
        CHECK(sw.report.value("b2") == doctest::Approx(1.5).epsilon(0.05));
        CHECK(sw.report.value("bers_l2") > 0.0);
    }

    SUBCASE("halving the spacing cuts the error by at least three") {
        auto sq_err = [](std::size_t count) {
            line_grid xg = make_line_grid(2.0, count);
            half_plane_grid g = make_half_plane_grid(xg, 32.0, 6, true);
            field_matrix vals = make_field_matrix(g);
            for (std::size_t j = 0; j < g.ny(); ++j)
                for (std::size_t i = 0; i < g.nx(); ++i)
                    vals[j][i] = std::log(2.0 * cplx(xg[i], g.y_at(j)));
            analytic_field sw = schwarzian(half_plane_field{g, vals});
            double worst = 0.0;
            for (std::size_t j = 0; j < g.ny(); ++j)
                for (std::size_t i = 2; i + 2 < g.nx(); ++i) {
                    cplx z(xg[i], g.y_at(j));
                    worst = std::max(worst, std::abs(sw.field.values[j][i] + 1.5 / (z * z)));
                }
            return worst;
        };
        double coarse = sq_err(401);
        double fine = sq_err(801);
        CHECK(coarse > 3.0 * fine);
    }

    SUBCASE("moebius pre and post composition leave the schwarzian") {
        line_grid xg = make_line_grid(2.0, 801);
        half_plane_grid g = make_half_plane_grid(xg, 32.0, 6, true);
        // post: M(f) with M(w) = (w - i)/(w + 30i), f = z^2; the pole sits far
        // from the image of the grid so the log stays on one branch
        field_matrix post = make_field_matrix(g);
        // pre: f(M(z)) with M(z) = 2z, so log (f o M)' = log 8z
        field_matrix pre = make_field_matrix(g);
        for (std::size_t j = 0; j < g.ny(); ++j)
            for (std::size_t i = 0; i < g.nx(); ++i) {
                cplx z(xg[i], g.y_at(j));
                cplx f = z * z;
                post[j][i] = std::log(31.0 * iunit) - 2.0 * std::log(f + 30.0 * iunit) +
                             std::log(2.0 * z);
                pre[j][i] = std::log(8.0 * z);
            }
        analytic_field sp = schwarzian(unwrap_field(half_plane_field{g, post}));
        analytic_field sq = schwarzian(half_plane_field{g, pre});
        double worst = 0.0;
        for (std::size_t j = 0; j < g.ny(); ++j)
            for (std::size_t i = 2; i + 2 < g.nx(); ++i) {
                cplx z(xg[i], g.y_at(j));
                worst = std::max(worst, std::abs(sp.field.values[j][i] + 1.5 / (z * z)));
                worst = std::max(worst, std::abs(sq.field.values[j][i] + 1.5 / (z * z)));
            }
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("beltrami composition") {
    half_plane_grid gh = make_half_plane_grid(make_line_grid(3.0, 193), 1.0, 8, true);
    half_plane_grid gm = make_half_plane_grid(make_line_grid(4.0, 257), 2.0, 10, true);

    SUBCASE("conformal outer factor returns the inner coefficient") {
        test_qc_map hm{0.15, 2.0, 0.4, 0.8, -0.5};
        extension_field hf = field_of_map(hm, gh);
        beltrami_field zero = make_beltrami_field(gm, make_field_matrix(gm));
        std::size_t clamps = 0;
        beltrami_field out = beltrami_compose(zero, hf, &clamps);
        beltrami_field direct = beltrami_of_field(hf);
        double gap = 0.0;
        for (std::size_t j = 0; j < gh.ny(); ++j)
            for (std::size_t i = 0; i < gh.nx(); ++i)
                gap = std::max(gap, std::abs(out.values[j][i] - direct.values[j][i]));
        CHECK(gap < 1e-12);
    }

    SUBCASE("identity inner map returns the outer coefficient") {
        extension_field id;
        id.grid = gm;
        id.values = make_field_matrix(gm);
        id.dz = make_field_matrix(gm, 1.0);
        id.dzbar = make_field_matrix(gm);
        for (std::size_t j = 0; j < gm.ny(); ++j)
            for (std::size_t i = 0; i < gm.nx(); ++i)
                id.values[j][i] = cplx(gm.xgrid[i], gm.y_at(j));
        id.boundary.assign(gm.nx(), 0.0);

        test_qc_map fm{0.12, 2.2, -0.3, 0.9, 0.4};
        field_matrix mv = make_field_matrix(gm);
        for (std::size_t j = 0; j < gm.ny(); ++j)
            for (std::size_t i = 0; i < gm.nx(); ++i)
                mv[j][i] = fm.mu(cplx(gm.xgrid[i], gm.y_at(j)));
        beltrami_field muf = make_beltrami_field(gm, mv);

        std::size_t clamps = 0;
        beltrami_field out = beltrami_compose(muf, id, &clamps);
        CHECK(clamps == 0);
        double gap = 0.0;
        for (std::size_t j = 0; j < gm.ny(); ++j)
            for (std::size_t i = 0; i < gm.nx(); ++i)
                gap = std::max(gap, std::abs(out.values[j][i] - muf.values[j][i]));
        CHECK(gap < 1e-12);
    }

    SUBCASE("random smooth maps against the finite-difference composite") {
        std::mt19937 rng(20240817u);
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        std::uniform_real_distribution<double> amp(0.05, 0.12);
        std::uniform_real_distribution<double> scale(1.8, 2.5);
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            test_qc_map fmap{amp(rng), scale(rng), coef(rng), coef(rng), coef(rng)};
            test_qc_map hmap{amp(rng), scale(rng), coef(rng), coef(rng), coef(rng)};

            field_matrix mv = make_field_matrix(gm);
            for (std::size_t j = 0; j < gm.ny(); ++j)
                for (std::size_t i = 0; i < gm.nx(); ++i)
                    mv[j][i] = fmap.mu(cplx(gm.xgrid[i], gm.y_at(j)));
            beltrami_field muf = make_beltrami_field(gm, mv);
            extension_field hf = field_of_map(hmap, gh);
            beltrami_field composed = beltrami_compose(muf, hf);
            CHECK(composed.sup_norm < 1.0);

            extension_field gf;
            gf.grid = gh;
            gf.values = make_field_matrix(gh);
            for (std::size_t j = 0; j < gh.ny(); ++j)
                for (std::size_t i = 0; i < gh.nx(); ++i)
                    gf.values[j][i] = fmap.value(hmap.value(cplx(gh.xgrid[i], gh.y_at(j))));
            field_matrix gx = field_dx(gh, gf.values);
            field_matrix gy = field_dy(gh, gf.values);
            gf.dz = make_field_matrix(gh);
            gf.dzbar = make_field_matrix(gh);
            for (std::size_t j = 0; j < gh.ny(); ++j)
                for (std::size_t i = 0; i < gh.nx(); ++i) {
                    gf.dz[j][i] = 0.5 * (gx[j][i] - iunit * gy[j][i]);
                    gf.dzbar[j][i] = 0.5 * (gx[j][i] + iunit * gy[j][i]);
                }
            gf.boundary.assign(gh.nx(), 0.0);
            beltrami_field oracle = beltrami_of_field(gf);

            for (std::size_t j = 2; j + 1 < gh.ny(); ++j)
                for (std::size_t i = 2; i + 2 < gh.nx(); ++i)
                    worst = std::max(worst, std::abs(composed.values[j][i] - oracle.values[j][i]));
        }
        CHECK(worst < 5e-3);
    }

    SUBCASE("denominator collapse is rejected") {
        half_plane_grid gs = make_half_plane_grid(make_line_grid(2.0, 17), 1.0, 6, true);
        extension_field hf;
        hf.grid = gs;
        hf.values = make_field_matrix(gs);
        hf.dz = make_field_matrix(gs, 1.0);
        hf.dzbar = make_field_matrix(gs, 0.9);
        for (std::size_t j = 0; j < gs.ny(); ++j)
            for (std::size_t i = 0; i < gs.nx(); ++i)
                hf.values[j][i] = cplx(gs.xgrid[i], gs.y_at(j));
        hf.boundary.assign(gs.nx(), 0.0);
        double bad = -(1.0 - 1e-7) / 0.9;
        beltrami_field muf = make_beltrami_field(gs, make_field_matrix(gs, bad));
        CHECK_THROWS_AS(beltrami_compose(muf, hf), degeneracy_error);
    }
}

TEST_CASE("average-based extension of straight boundary maps") {
    line_grid g = make_line_grid(4.0, 65);
    std::vector<double> idv(g.size()), affv(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        idv[i] = g[i];
        affv[i] = 2.0 * g[i] + 1.0;
    }

    extension_field fid = beurling_ahlfors_extension(make_monotone_map(g, idv));
    double gap = 0.0, mu = 0.0;
    for (std::size_t j = 0; j < fid.grid.ny(); ++j)
        for (std::size_t i = 0; i < fid.grid.nx(); ++i) {
            cplx z(fid.grid.xgrid[i], fid.grid.y_at(j));
            gap = std::max(gap, std::abs(fid.values[j][i] - z));
            mu = std::max(mu, std::abs(fid.dzbar[j][i] / fid.dz[j][i]));
        }
    CHECK(gap < 1e-12);
    CHECK(mu < 1e-12);

    extension_field faf = beurling_ahlfors_extension(make_monotone_map(g, affv));
    gap = 0.0;
    mu = 0.0;
    for (std::size_t j = 0; j < faf.grid.ny(); ++j)
        for (std::size_t i = 0; i < faf.grid.nx(); ++i) {
            cplx z(faf.grid.xgrid[i], faf.grid.y_at(j));
            gap = std::max(gap, std::abs(faf.values[j][i] - (2.0 * z + 1.0)));
            mu = std::max(mu, std::abs(faf.dzbar[j][i] / faf.dz[j][i]));
        }
    CHECK(gap < 1e-12);
    CHECK(mu < 1e-12);
}
