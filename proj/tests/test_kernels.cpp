#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "wpc/kernels.hpp"

using namespace wpc;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    double h = (b - a) / n, acc = f(a) + f(b);
    for (int k = 1; k < n; ++k) acc += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

sampled_line_function smooth_sample(double halfwidth, std::size_t count,
                                    const std::function<double(double)>& f) {
    line_grid g = make_line_grid(halfwidth, count);
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g[i]);
    return make_sampled(g, v);
}

}  // namespace

TEST_CASE("kernel moments match their construction") {
    auto moment = [](kernel_spec k, int p, bool imag_part) {
        return simpson(
            [&](double x) {
                cplx v = kernel_eval(k, x);
                return std::pow(x, p) * (imag_part ? v.imag() : v.real());
            },
            -1.0, 1.0, 4000);
    };
    CHECK(moment(kernel_spec::phi, 0, false) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(moment(kernel_spec::phi, 1, false)) < 1e-12);
    CHECK(std::abs(moment(kernel_spec::psi_odd, 0, false)) < 1e-12);
    CHECK(moment(kernel_spec::psi_odd, 1, false) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(moment(kernel_spec::psi_half, 0, false)) < 1e-10);
    CHECK(std::abs(moment(kernel_spec::psi_half, 0, true)) < 1e-10);
    CHECK(std::abs(moment(kernel_spec::alpha, 0, false)) < 1e-12);
}

TEST_CASE("kernel derivatives agree with centered differences") {
    for (kernel_spec k : {kernel_spec::phi, kernel_spec::psi_odd, kernel_spec::psi_half,
                          kernel_spec::alpha}) {
        for (double x : {-0.9, -0.5, -0.1, 0.0, 0.3, 0.7, 0.95}) {
            double h = 1e-6;
            cplx fd = (kernel_eval(k, x + h) - kernel_eval(k, x - h)) / (2.0 * h);
            CHECK(std::abs(kernel_derivative(k, x) - fd) < 1e-5);
        }
    }
}

TEST_CASE("kernels vanish outside the unit interval") {
    for (kernel_spec k : {kernel_spec::phi, kernel_spec::psi_odd, kernel_spec::psi_half,
                          kernel_spec::alpha}) {
        CHECK(std::abs(kernel_eval(k, 1.0)) == 0.0);
        CHECK(std::abs(kernel_eval(k, -1.0)) == 0.0);
        CHECK(std::abs(kernel_eval(k, 1.3)) == 0.0);
        CHECK(std::abs(kernel_scaled(k, 0.5, 0.7)) == 0.0);
    }
}

TEST_CASE("smoothing preserves affine data to quadrature precision") {
    sampled_line_function u = smooth_sample(10.0, 2001, [](double x) { return 0.7 * x; });
    for (double y : {0.25, 1.0, 2.0}) {
        for (double x : {-3.0, 0.0, 1.7}) {
            cplx smoothed = convolve_scaled(kernel_spec::phi, y, u, x);
            CHECK(std::abs(smoothed - cplx(0.7 * x)) < 1e-7);
            cplx slope = convolve_scaled(kernel_spec::psi_odd, y, u, x);
            CHECK(std::abs(slope - cplx(-0.7 * y)) < 1e-7);
        }
    }
}

TEST_CASE("convolution reproduces a quadratic polynomial test value") {
    sampled_line_function u =
        smooth_sample(12.0, 4001, [](double x) { return x * x; });
    double y = 1.0, x = 0.5;
    double second_moment =
        simpson([](double s) { return s * s * kernel_eval(kernel_spec::phi, s).real(); },
                -1.0, 1.0, 4000);
    cplx got = convolve_scaled(kernel_spec::phi, y, u, x);
    double interp_bias = 0.0;
    {
        double h = u.grid.max_spacing();
        interp_bias = h * h / 6.0;
    }
    CHECK(std::abs(got.real() - (x * x + y * y * second_moment + interp_bias)) < 1e-6);
}

TEST_CASE("derivative identities match finite differences of the smoothing") {
    sampled_line_function u = smooth_sample(10.0, 3001, [](double x) {
        return std::exp(-x * x / 3.0) * std::cos(1.3 * x);
    });
    line_function_view w = view_of(u);
    for (double y : {0.4, 1.1}) {
        for (double x : {-1.2, 0.3, 2.0}) {
            double h = 1e-5;
            cplx fdx = (convolve_scaled(kernel_spec::phi, y, u, x + h) -
                        convolve_scaled(kernel_spec::phi, y, u, x - h)) /
                       (2.0 * h);
            CHECK(std::abs(convolve_scaled_dx(kernel_spec::phi, y, w, x) - fdx) < 1e-7);
            cplx fdy = (convolve_scaled(kernel_spec::phi, y + h, u, x) -
                        convolve_scaled(kernel_spec::phi, y - h, u, x)) /
                       (2.0 * h);
            CHECK(std::abs(convolve_scaled_dy(kernel_spec::phi, y, w, x) - fdy) < 1e-7);
        }
    }
}

TEST_CASE("dbar of the smoothing is the psi half convolution over y") {
    sampled_line_function u = smooth_sample(10.0, 3001, [](double x) {
        return std::sin(0.8 * x) / (1.0 + 0.2 * x * x);
    });
    line_function_view w = view_of(u);
    for (double y : {0.5, 1.5}) {
        for (double x : {-2.0, 0.1, 1.4}) {
            cplx dx = convolve_scaled_dx(kernel_spec::phi, y, w, x);
            cplx dy = convolve_scaled_dy(kernel_spec::phi, y, w, x);
            cplx dbar = 0.5 * (dx + cplx(0.0, 1.0) * dy);
            cplx rhs = convolve_scaled(kernel_spec::psi_half, y, u, x) / y;
            CHECK(std::abs(dbar - rhs) < 1e-7);
        }
    }
}

TEST_CASE("scaled convolution rejects zero height") {
    sampled_line_function u = smooth_sample(4.0, 65, [](double) { return 1.0; });
    CHECK_THROWS(convolve_scaled(kernel_spec::phi, 0.0, u, 0.0));
}
