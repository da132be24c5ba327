#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wpc/curve.hpp"
#include "wpc/extension.hpp"
#include "wpc/welding.hpp"

namespace wpc {

enum class verdict { pass, fail, inconclusive };

const char* verdict_name(verdict v);

// One measured assertion inside an experiment. Inconclusive marks an
// upstream numerical failure, never a theorem violation; the note records
// the cause or auxiliary numbers.
struct check_record {
    std::string name;
    verdict result = verdict::inconclusive;
    double measured = 0.0;
    double threshold = 0.0;
    std::string note;
};

struct experiment_report {
    std::string experiment;
    std::vector<check_record> checks;
    std::uint64_t config_hash = 0;
    std::vector<std::size_t> resolutions;

    bool passed() const;
    bool conclusive() const;
    const check_record& check(const std::string& name) const;
};

// Shared experiment inputs: a base tangent angle, a perturbation profile,
// a strictly decreasing ladder of positive amplitudes, resolutions, and
// per-check tolerance overrides (defaults come from the calibration
// header).
struct experiment_config {
    tangent_angle base_angle;
    sampled_line_function perturbation;
    std::vector<double> epsilon_ladder;
    std::size_t map_resolution = 768;
    std::size_t field_levels = 8;
    double field_height = 4.0;
    std::uint64_t seed = 0;
    std::map<std::string, double> tolerances;

    double tolerance(const std::string& key, double fallback) const;
};

void validate_config(const experiment_config& cfg);

// FNV-1a over a canonical byte serialization of the config; identical
// configs hash identically across runs.
std::uint64_t config_hash(const experiment_config& cfg);

// Finite-window Hilbert transform of compactly supported boundary data,
// closed form against the piecewise-linear interpolant. Used to invert
// the linearized response of the sewing map near the flat curve.
sampled_line_function hilbert_transform(const sampled_line_function& u);

// Forward direction: distance of sewing data log h' under angle
// perturbations b + eps v decays monotonically along the ladder and ends
// below the calibrated threshold. Reverse direction: perturb log h'
// itself, recover the angle through the map pipeline by preconditioned
// fixed-point iteration, and check the recovered norm tracks eps.
experiment_report continuity_sweep(const experiment_config& cfg);

// Beltrami measures (sup and hyperbolic energy) of the base extension at
// u = eps v scale linearly with the boundary seminorm along the ladder:
// the ratio spread stays within the calibrated factor on both half
// planes, and the half planes agree by conjugation for real profiles.
experiment_report energy_scaling(const experiment_config& cfg);

// Characterization chain on a curve: the boundary identity relating
// log (h1^{-1})' to the real boundary trace of log f', finiteness of the
// pushed-forward angle seminorm with comparability to the intrinsic one,
// and a finite chord-arc constant.
experiment_report characterization_chain(const experiment_config& cfg);

// The five reflection identities between the curves of b and -b on
// boundary samples: conjugated curve, conjugated image, swapped side
// maps, and inverted sewing map.
experiment_report symmetry_suite(const experiment_config& cfg);

// Splitting of a complex parametrization h into (g, b): g accumulates
// |h'| (arc length), b is the unwrapped chord argument carried to the
// arc-length coordinate.
struct parametrization_split {
    monotone_boundary_map g;
    sampled_line_function angle;
};

parametrization_split split_parametrization(const monotone_boundary_map& h);

// Roundtrip h -> (g, b) -> unit-speed resynthesis -> z_b o g, measuring
// the sup gap of values and of log-derivatives against the input.
experiment_report decomposition_roundtrip(const monotone_boundary_map& h);

// The parametrization with log h' = log h0' + w, built by cumulative
// closed-form integration of h0' e^w. The image polyline is validated as
// a curve; a failing Jordan check propagates.
monotone_boundary_map perturb_log_derivative(const monotone_boundary_map& h0,
                                             const sampled_line_function& w);

// Pointwise square-average majorant of a Beltrami field against its
// boundary data: reports the worst ratio |mu|^2 over the windowed square
// mean of u-increments, flags unmajorized nodes, and confirms finite
// energy when the bound holds.
experiment_report majorant_experiment(const sampled_line_function& u, const beltrami_field& mu);

// Complex-differentiability probe of t -> Beltrami(extension at u + t v):
// difference quotients along distinct complex directions from t_grid[0]
// must agree in the energy norm within the calibrated relative residual.
experiment_report holomorphy_probe(const tangent_angle& b, const sampled_line_function& u,
                                   const sampled_line_function& v,
                                   const std::vector<cplx>& t_grid);

}  // namespace wpc
