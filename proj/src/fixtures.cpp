#include "wpc/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace wpc::fixtures {

double bump(double x, double halfwidth) {
    double t = x / halfwidth;
    double q = 1.0 - t * t;
    if (q <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / q);
}

double two_bump(double x) { return bump(x + 2.0, 1.8) + bump(x - 2.0, 1.8); }

namespace {

// C-infinity unit step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double a = std::exp(-1.0 / t);
    double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

}  // namespace

double step_pair(double x) {
    return smooth_step((x + 3.0) / 2.0) * smooth_step((3.0 - x) / 2.0);
}

double gaussian(double x) { return std::exp(-x * x); }

tangent_angle profile_angle(const std::string& name, double amplitude, const line_grid& g) {
    double (*f)(double) = nullptr;
    if (name == "flat")
        f = +[](double) { return 0.0; };
    else if (name == "bump")
        f = +[](double x) { return bump(x); };
    else if (name == "two_bump")
        f = two_bump;
    else if (name == "step_pair")
        f = step_pair;
    else if (name == "gaussian")
        f = gaussian;
    else
        throw std::invalid_argument("profile_angle: unknown profile " + name);
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = amplitude * f(g.nodes[i]);
    return make_tangent_angle(make_sampled(g, v));
}

const std::vector<suite_entry>& calibration_suite() {
    static const std::vector<suite_entry> suite = {
        {"flat", "flat", 0.0},
        {"bump01", "bump", 0.1},
        {"bump03", "bump", 0.3},
        {"twobump03", "two_bump", 0.3},
        {"steppair05", "step_pair", 0.5},
    };
    return suite;
}

tangent_angle suite_angle(const suite_entry& e, const line_grid& g) {
    return profile_angle(e.profile, e.amplitude, g);
}

}  // namespace wpc::fixtures
