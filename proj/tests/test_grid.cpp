#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "wpc/errors.hpp"
#include "wpc/grid.hpp"

using namespace wpc;

TEST_CASE("line grids are symmetric and cover the window") {
    line_grid g = make_line_grid(8.0, 513);
    REQUIRE(g.size() == 513);
    CHECK(g.halfwidth() == 8.0);
    CHECK(g[256] == 0.0);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(g[i] == doctest::Approx(-g[g.size() - 1 - i]).epsilon(1e-15));
    CHECK(g.max_spacing() == doctest::Approx(16.0 / 512));
    CHECK_THROWS(make_line_grid(8.0, 4));
    validate_line_grid(g);
}

TEST_CASE("refined grids concentrate spacing near the origin") {
    line_grid g = make_refined_line_grid(8.0, 257, 3);
    validate_line_grid(g);
    CHECK(g.halfwidth() == 8.0);
    double center = 1e300, edge = 0.0;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        double h = g[i + 1] - g[i];
        if (std::abs(g[i]) < 1.0) center = std::min(center, h);
        if (std::abs(g[i]) > 6.0) edge = std::max(edge, h);
    }
    CHECK(center < 0.5 * edge);
}

TEST_CASE("cell lookup clamps to the interior") {
    line_grid g = make_line_grid(4.0, 17);
    CHECK(g.cell_of(-100.0) == 0);
    CHECK(g.cell_of(100.0) == g.size() - 2);
    std::size_t c = g.cell_of(0.1);
    CHECK(g[c] <= 0.1);
    CHECK(0.1 <= g[c + 1]);
}

TEST_CASE("sampled functions interpolate linearly with constant tails") {
    line_grid g = make_line_grid(4.0, 17);
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = cplx(g[i] * g[i], g[i]);
    sampled_line_function u = make_sampled(g, v);
    double a = g[3], b = g[4], mid = 0.5 * (a + b);
    CHECK(u.eval(mid).real() == doctest::Approx(0.5 * (a * a + b * b)));
    CHECK(u.eval(mid).imag() == doctest::Approx(mid));
    CHECK(u.eval(50.0) == u.tail_right());
    CHECK(u.eval(-50.0) == u.tail_left());
    CHECK(!u.is_real(1e-12));
    for (cplx& z : v) z = z.real();
    CHECK(make_sampled(g, v).is_real(0.0));
}

TEST_CASE("line integrals are exact for linear data") {
    line_grid g = make_line_grid(5.0, 41);
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = 2.0 * g[i] + 3.0;
    CHECK(integrate_line(g, v).real() == doctest::Approx(30.0).epsilon(1e-13));
    std::vector<cplx> cum = cumulative_integral(g, v);
    CHECK(std::abs(cum[20]) < 1e-14);
    CHECK(cum[40].real() == doctest::Approx(5.0 * 5.0 + 15.0).epsilon(1e-13));
    CHECK(cum[0].real() == doctest::Approx(5.0 * 5.0 - 15.0).epsilon(1e-12));
}

TEST_CASE("monotone maps extend affinely past the window") {
    line_grid g = make_line_grid(3.0, 31);
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = g[i] + 0.4 * std::tanh(g[i]);
    monotone_boundary_map m = make_monotone_map(g, v);
    validate_monotone(m);
    CHECK(m.monotone_real);
    CHECK(m.eval_real(0.0) == doctest::Approx(0.0));
    double beyond = m.eval_real(5.0);
    CHECK(beyond == doctest::Approx(v.back() + 2.0 * m.slope_right.real()));
    std::vector<double> bad = v;
    std::swap(bad[10], bad[11]);
    CHECK_THROWS(make_monotone_map(g, bad));
}

TEST_CASE("monotone inversion composes to the identity") {
    line_grid g = make_line_grid(6.0, 401);
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = g[i] + 0.8 * std::tanh(g[i]);
    monotone_boundary_map m = make_monotone_map(g, v);
    monotone_boundary_map inv = invert_monotone(m, 401);
    for (double x = -5.0; x <= 5.0; x += 0.37) {
        CHECK(std::abs(inv.eval_real(m.eval_real(x)) - x) < 2e-3);
        CHECK(std::abs(m.eval_real(inv.eval_real(x)) - x) < 2e-3);
    }
    monotone_boundary_map both = compose_maps(inv, m);
    for (double x = -4.0; x <= 4.0; x += 0.53)
        CHECK(std::abs(both.eval_real(x) - x) < 2e-3);
}

TEST_CASE("half plane grids expose signed dyadic levels") {
    line_grid xg = make_line_grid(4.0, 33);
    half_plane_grid up = make_half_plane_grid(xg, 2.0, 7, true);
    validate_half_plane_grid(up);
    CHECK(up.ny() == 7);
    CHECK(up.y_max() == 2.0);
    CHECK(up.y_min() == doctest::Approx(2.0 / 64));
    for (std::size_t j = 0; j + 1 < up.ny(); ++j)
        CHECK(up.ylevels[j + 1] == doctest::Approx(0.5 * up.ylevels[j]));
    CHECK(up.y_at(0) == 2.0);
    half_plane_grid low = make_half_plane_grid(xg, 2.0, 7, false);
    CHECK(low.y_at(0) == -2.0);
}

TEST_CASE("field differences are exact on quadratics") {
    half_plane_grid g = make_half_plane_grid(make_line_grid(4.0, 33), 2.0, 7, true);
    field_matrix v = make_field_matrix(g);
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i) {
            double x = g.xgrid[i], y = g.y_at(j);
            v[j][i] = cplx(x * x + 2.0 * y * y, x * y);
        }
    field_matrix dx = field_dx(g, v), dy = field_dy(g, v);
    for (std::size_t j = 1; j + 1 < g.ny(); ++j)
        for (std::size_t i = 1; i + 1 < g.nx(); ++i) {
            double x = g.xgrid[i], y = g.y_at(j);
            CHECK(std::abs(dx[j][i] - cplx(2.0 * x, y)) < 1e-10);
            CHECK(std::abs(dy[j][i] - cplx(4.0 * y, x)) < 1e-10);
        }
    double hx = g.xgrid.max_spacing();
    for (std::size_t j = 0; j < g.ny(); ++j) {
        double y = g.y_at(j);
        CHECK(std::abs(dx[j][0] - cplx(2.0 * g.xgrid[0], y)) <= hx + 1e-12);
        CHECK(std::abs(dx[j][g.nx() - 1] - cplx(2.0 * g.xgrid[g.nx() - 1], y)) <= hx + 1e-12);
    }
}

TEST_CASE("box quadrature is exact for constants") {
    half_plane_grid g = make_half_plane_grid(make_line_grid(4.0, 33), 2.0, 7, true);
    double area = 8.0 * (g.y_max() - g.y_min());
    CHECK(integrate_box(g, [](std::size_t, std::size_t) { return 1.0; }) ==
          doctest::Approx(area).epsilon(1e-13));
}

TEST_CASE("interpolation extrapolates with the end cell slopes") {
    std::vector<double> xs{0.0, 1.0, 2.0}, ys{1.0, 3.0, 2.0};
    CHECK(interp_linear(xs, ys, 0.5) == doctest::Approx(2.0));
    CHECK(interp_linear(xs, ys, -5.0) == doctest::Approx(1.0 - 5.0 * 2.0));
    CHECK(interp_linear(xs, ys, 9.0) == doctest::Approx(2.0 - 7.0));
}
