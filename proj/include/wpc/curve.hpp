#pragma once

#include <cstdint>

#include "wpc/grid.hpp"
#include "wpc/spaces.hpp"

namespace wpc {

// Real tangent-angle data b with constant tails, sampled on a line grid.
// The synthesized curve has derivative e^{ib} and passes through infinity
// along straight rays in the tail directions.
struct tangent_angle {
    sampled_line_function samples;

    double at(double x) const { return samples.eval(x).real(); }
};

tangent_angle make_tangent_angle(const sampled_line_function& samples);

// Arc-length tagged points of a curve through infinity. Tags are strictly
// increasing, contain 0 in range, and satisfy the unit-speed chord bound
// |z(s)-z(t)| <= |s-t| with defect at most 1e-3 on adjacent samples.
// Beyond the sampled window the curve continues along straight rays with
// the stored unit directions.
struct curve_samples {
    std::vector<double> tags;
    std::vector<cplx> points;
    cplx dir_left{1.0, 0.0};
    cplx dir_right{1.0, 0.0};

    std::size_t size() const { return tags.size(); }
    double tag_front() const { return tags.front(); }
    double tag_back() const { return tags.back(); }
    cplx point_at(double s) const;
    // Index of the sample with tag exactly s, if present.
    std::size_t index_of_tag(double s) const;
};

void validate_curve(const curve_samples& c);

// Curve synthesis z(x) = int_0^x e^{i b(t)} dt, integrated cell by cell in
// closed form against the piecewise-linear interpolant of b, anchored so
// z(0) = 0 exactly.
curve_samples gamma_u(const tangent_angle& b);

// Recovers tangent angles from chords: the unwrapped argument of
// (z_{k+1} - z_k)/(s_{k+1} - s_k), reported on the chord-midpoint grid.
tangent_angle tangent_angle_from_curve(const curve_samples& c);

// Smallest (1+k) with |s_i - s_j| <= (1+k) |z(s_i) - z(s_j)| over sampled
// pairs: all pairs when the count fits in pair_budget, otherwise a
// deterministic subsample stratified by dyadic separation. Keys
// "chord_arc_k", "pairs_checked".
norm_report chord_arc_constant(const curve_samples& c, std::size_t pair_budget, std::uint64_t seed);

struct normalization_record {
    cplx translation;
    double rotation = 0.0;
    double scale = 1.0;
};

// Renormalizes to the standard gauge: arc-length tags rederived from
// cumulative chords, z(0) = 0, the arc-length-1 point on the positive
// real axis. Similarity inputs a z + beta land on the same output.
std::pair<curve_samples, normalization_record> normalize_curve(const curve_samples& c);

// Mirror image J(z) = conj(z), same arc-length tags.
curve_samples reflect_J(const curve_samples& c);

// The curve as a boundary map s -> z(s) with ray tails, for convolution
// and welding plumbing. Requires the tags to form a valid line grid.
monotone_boundary_map curve_as_map(const curve_samples& c);

}  // namespace wpc
