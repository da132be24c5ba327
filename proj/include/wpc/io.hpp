#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wpc/curve.hpp"
#include "wpc/grid.hpp"
#include "wpc/lab.hpp"
#include "wpc/spaces.hpp"

namespace wpc::io {

// Malformed input text; the message carries the line or byte position.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// 17 significant digits, enough to reproduce the double bit pattern.
std::string format_double(double x);

std::string read_text(const std::string& path);
// Writes to a temporary file in the same directory, then renames over the
// target, so readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

// Column CSV with '#' header comments. Functions and maps use columns
// x, re, im; curves tag, re, im with tail directions in the header; fields
// x, y, re, im in level-major order with the orientation in the header.
std::string function_csv(const sampled_line_function& u);
sampled_line_function parse_function_csv(const std::string& text);

std::string curve_csv(const curve_samples& c);
curve_samples parse_curve_csv(const std::string& text);

std::string map_csv(const monotone_boundary_map& m);
monotone_boundary_map parse_map_csv(const std::string& text);

std::string field_csv(const half_plane_grid& g, const field_matrix& m);
std::pair<half_plane_grid, field_matrix> parse_field_csv(const std::string& text);

// Reports and configs serialize as JSON with fixed key order and
// format_double numbers, so identical data produces identical bytes.
// Schemas: norm-report/1, experiment-report/1, run-config/1.
std::string norm_report_json(const norm_report& r);
norm_report parse_norm_report(const std::string& text);

std::string experiment_report_json(const experiment_report& r);
experiment_report parse_experiment_report(const std::string& text);

// Boundary data source: a named fixture profile with an amplitude, or a
// function CSV file. Exactly one of profile/file is set.
struct profile_spec {
    std::string profile;
    double amplitude = 0.0;
    std::string file;
};

struct run_config {
    std::string experiment;
    profile_spec base;
    profile_spec perturbation;
    std::vector<double> ladder{0.2, 0.1, 0.05, 0.025};
    std::size_t grid = 513;
    double window = 8.0;
    std::size_t resolution = 768;
    std::size_t levels = 8;
    double height = 4.0;
    std::uint64_t seed = 0;
    std::map<std::string, double> tolerances;
};

std::string run_config_json(const run_config& c);
run_config parse_run_config(const std::string& text);

// Resolves profiles and files into sampled data on the configured grid and
// validates the result. Unknown experiment names or malformed specs throw
// std::invalid_argument.
experiment_config build_experiment(const run_config& c);

}  // namespace wpc::io
