#pragma once

#include <cstddef>
#include <vector>

#include "wpc/curve.hpp"
#include "wpc/grid.hpp"

namespace wpc {

// One slit step of the conformal chain. The forward map removes the
// hyperbolic geodesic from 0 to the recorded tip and sends the region above
// it back onto the half plane, keeping 0 and infinity fixed. Steps whose tip
// is numerically on the imaginary axis collapse to the plain square-root
// slit map; the general step is a Moebius, the vertical slit map, and a
// second Moebius with real parameters d, h, p.
struct zipper_step {
    double d = 0.0;
    double h = 0.0;
    double p = 0.0;
    bool vertical = true;
};

// Gauge data for one side of the curve: the sector exponent used when the
// last slit is opened into a half plane, and the real Moebius that places
// the image of the curve point at infinity where it belongs. The Moebius is
// k(v) = (gd*v - gb)/(pole - v); its determinant sign tells whether it
// preserves or exchanges the half planes.
struct side_gauge {
    double beta = 2.0;
    double pole = 0.0;
    double gb = 0.0;
    double gd = 0.0;
};

// Complete record of the welding chain for one curve: the opening Moebius
// (kept in curve coordinates), the slit steps in traversal order, the
// closing angle, per-side gauges, and the boundary correspondence samples
// that the construction produces along the way. tags is symmetric and
// contains 0 and 1 exactly; h_upper and h_lower are the boundary positions
// of the tagged curve points for the two Riemann maps.
struct zipper_engine {
    cplx za;
    cplx zb;
    cplx phase;
    std::vector<zipper_step> steps;
    double theta_star = 0.0;
    side_gauge upper;
    side_gauge lower;
    std::vector<double> tags;
    std::vector<double> h_upper;
    std::vector<double> h_lower;
    double window = 0.0;
    std::size_t resolution = 0;
};

// Result of evaluating the map at one point: the image in curve coordinates
// and the logarithmic derivative, whose imaginary part is only defined
// modulo 2*pi until a field unwrap fixes it.
struct zipper_value {
    cplx z;
    cplx log_d;
};

// Builds the chain for a normalized curve. resolution controls the total
// number of boundary samples (uniform window plus geometric tails reaching
// tag 1e9 on both sides). Throws not_jordan_error if the sample chords
// cross, resolution_error if a step degenerates.
zipper_engine build_zipper(const curve_samples& c, std::size_t resolution);

// Evaluates the Riemann map of the chosen side at an interior point. For the
// upper side w lies in the open upper half plane, for the lower side in the
// open lower half plane.
zipper_value zipper_map(const zipper_engine& e, cplx w, bool upper_side);

// Boundary version at real x. The image lies on the sampled curve. x must
// avoid the recorded boundary positions themselves; halfway between two
// recorded samples the evaluation is well conditioned.
zipper_value zipper_boundary(const zipper_engine& e, double x, bool upper_side);

}  // namespace wpc
