#pragma once

#include <string>
#include <vector>

#include "wpc/curve.hpp"

namespace wpc::fixtures {

// Smooth compactly supported profiles used throughout the calibration
// suite. All are C-infinity with support inside [-4, 4] and peak height 1.

// exp(1 - 1/(1 - (x/w)^2)) on (-w, w), 0 outside.
double bump(double x, double halfwidth = 4.0);

// Two copies of a narrower bump centered at -2 and 2.
double two_bump(double x);

// Smooth plateau: rises on [-3, -1], level near 1, falls on [1, 3].
double step_pair(double x);

// Gaussian exp(-x^2); not compactly supported but decays below tail
// tolerance inside the standard windows.
double gaussian(double x);

tangent_angle profile_angle(const std::string& name, double amplitude, const line_grid& g);

struct suite_entry {
    std::string label;
    std::string profile;
    double amplitude;
};

// The fixed calibration suite for comparability constants.
const std::vector<suite_entry>& calibration_suite();

tangent_angle suite_angle(const suite_entry& e, const line_grid& g);

}  // namespace wpc::fixtures
