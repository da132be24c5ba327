#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "wpc/fixtures.hpp"
#include "wpc/spaces.hpp"

using namespace wpc;

namespace {

sampled_line_function sample(double halfwidth, std::size_t count,
                             const std::function<double(double)>& f) {
    line_grid g = make_line_grid(halfwidth, count);
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g[i]);
    return make_sampled(g, v);
}

half_plane_field constant_field(const half_plane_grid& g,
                                const std::function<cplx(double, double)>& f) {
    field_matrix v = make_field_matrix(g);
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i) v[j][i] = f(g.xgrid[i], g.y_at(j));
    return half_plane_field{g, std::move(v)};
}

}  // namespace

TEST_CASE("gaussian sobolev seminorm matches the closed form") {
    sampled_line_function u = sample(8.0, 2001, [](double x) { return std::exp(-x * x); });
    double got = h12_seminorm(u).value("h12");
    double expected = 1.0 / std::sqrt(2.0 * 3.14159265358979323846);
    CHECK(std::abs(got - expected) < 0.02 * expected);
}

TEST_CASE("sobolev seminorm kills constants and scales linearly") {
    sampled_line_function c = sample(6.0, 257, [](double) { return 4.2; });
    CHECK(h12_seminorm(c).value("h12") < 1e-12);
    sampled_line_function u = sample(8.0, 1025, [](double x) { return fixtures::bump(x); });
    sampled_line_function u3 = sample(8.0, 1025, [](double x) { return 3.0 * fixtures::bump(x); });
    CHECK(h12_seminorm(u3).value("h12") ==
          doctest::Approx(3.0 * h12_seminorm(u).value("h12")).epsilon(1e-10));
}

TEST_CASE("mean oscillation vanishes for constants and sees the bump") {
    sampled_line_function c = sample(6.0, 257, [](double) { return -0.7; });
    CHECK(bmo_norm(c).value("bmo") < 1e-13);
    sampled_line_function u = sample(8.0, 1025, [](double x) { return fixtures::bump(x); });
    double b = bmo_norm(u).value("bmo");
    CHECK(b > 0.05);
    CHECK(b < 1.0);
    sampled_line_function u2 = sample(8.0, 1025, [](double x) { return 2.0 * fixtures::bump(x); });
    CHECK(bmo_norm(u2).value("bmo") == doctest::Approx(2.0 * b).epsilon(1e-10));
}

TEST_CASE("oscillation profile decays with the scale for smooth data") {
    sampled_line_function u = sample(8.0, 1025, [](double x) { return fixtures::bump(x); });
    norm_report r = vmo_modulus(u, {2.0, 1.0, 0.5, 0.25});
    double prev = 1e300;
    for (double s : {2.0, 1.0, 0.5, 0.25}) {
        std::ostringstream key;
        key << "vmo@" << s;
        double v = r.value(key.str());
        CHECK(v > 0.0);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
}

TEST_CASE("hyperbolic and dirichlet norms have constant field oracles") {
    half_plane_grid g = make_half_plane_grid(make_line_grid(4.0, 65), 2.0, 8, true);
    double area = 8.0 * (g.y_max() - g.y_min());
    half_plane_field one = constant_field(g, [](double, double) { return cplx(1.0); });
    CHECK(dirichlet_seminorm(one).value("dirichlet") ==
          doctest::Approx(std::sqrt(area / 3.14159265358979323846)).epsilon(1e-12));
    half_plane_field inv_y = constant_field(g, [](double, double y) { return cplx(1.0 / y); });
    CHECK(bloch_norm(inv_y).value("bloch") == doctest::Approx(1.0).epsilon(1e-12));
    half_plane_field inv_y2 =
        constant_field(g, [](double, double y) { return cplx(0.3 / (y * y)); });
    CHECK(b2_norm(inv_y2).value("b2") == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(bers_l2_norm(inv_y).value("bers_l2") ==
          doctest::Approx(std::sqrt(area / 3.14159265358979323846)).epsilon(1e-12));
}

TEST_CASE("beltrami summaries recover sup and energy oracles") {
    half_plane_grid g = make_half_plane_grid(make_line_grid(4.0, 65), 2.0, 8, true);
    field_matrix v = make_field_matrix(g);
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i) v[j][i] = cplx(0.0, 0.25 * g.y_at(j));
    beltrami_field mu = make_beltrami_field(g, v);
    CHECK(mu.sup_norm == doctest::Approx(0.25 * g.y_max()).epsilon(1e-12));
    double area = 8.0 * (g.y_max() - g.y_min());
    CHECK(mu.wp_energy ==
          doctest::Approx(0.25 * std::sqrt(area / 3.14159265358979323846)).epsilon(1e-12));
    norm_report r = wp_norm(mu);
    CHECK(r.value("sup") == mu.sup_norm);
    CHECK(r.value("energy") == mu.wp_energy);
    CHECK(r.value("wp") == doctest::Approx(mu.sup_norm + mu.wp_energy));
}

TEST_CASE("poisson extension matches the step closed form away from the jump") {
    line_grid g = make_line_grid(10.0, 2001);
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = g[i] > 0.0 ? 1.0 : (g[i] < 0.0 ? 0.0 : 0.5);
    sampled_line_function u = make_sampled(g, v);
    half_plane_grid hg = make_half_plane_grid(make_line_grid(3.0, 61), 2.0, 6, true);
    half_plane_field ext = poisson_extend(u, hg);
    const double pi = 3.14159265358979323846;
    for (std::size_t j = 0; j < hg.ny(); ++j)
        for (std::size_t i = 0; i < hg.nx(); i += 5) {
            double x = hg.xgrid[i], y = hg.y_at(j);
            if (y < 0.4) continue;
            double exact = 0.5 + std::atan(x / y) / pi;
            CHECK(std::abs(ext.values[j][i].real() - exact) < 5e-3);
        }
    sampled_line_function c = sample(6.0, 257, [](double) { return 2.5; });
    half_plane_field cext = poisson_extend(c, hg);
    for (std::size_t j = 0; j < hg.ny(); ++j)
        CHECK(std::abs(cext.values[j][0] - cplx(2.5)) < 1e-10);
}

TEST_CASE("interval oscillation probe obeys the power mean ordering") {
    sampled_line_function u =
        sample(8.0, 1025, [](double x) { return fixtures::step_pair(x) + 0.2 * fixtures::bump(x); });
    norm_report r = john_nirenberg_probe(u, -2.0, 2.0, {0.1, 0.2});
    CHECK(r.value("p1_mean") <= std::sqrt(r.value("p2_mean")) + 1e-14);
    CHECK(std::sqrt(r.value("p2_mean")) <= std::pow(r.value("p4_mean"), 0.25) + 1e-14);
    CHECK(r.value("frac@0.1") >= r.value("frac@0.2") - 1e-14);
}
