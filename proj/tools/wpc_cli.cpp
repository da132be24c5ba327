#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wpc/errors.hpp"
#include "wpc/io.hpp"
#include "wpc/welding.hpp"

namespace {

using namespace wpc;

std::string join_out(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

void merge_tolerance_file(io::run_config& cfg, const std::string& path) {
    if (path.empty()) return;
    norm_report overrides = io::parse_norm_report(io::read_text(path));
    for (const auto& [key, value] : overrides.values) cfg.tolerances[key] = value;
}

int report_exit_code(const experiment_report& rep) {
    bool any_fail = false, any_inconclusive = false;
    for (const check_record& c : rep.checks) {
        any_fail = any_fail || c.result == verdict::fail;
        any_inconclusive = any_inconclusive || c.result == verdict::inconclusive;
    }
    if (any_fail) return 3;
    if (any_inconclusive) return 4;
    return 0;
}

void print_report(const experiment_report& rep) {
    for (const check_record& c : rep.checks) {
        std::printf("check %-24s %-12s measured=%s threshold=%s%s%s\n", c.name.c_str(),
                    verdict_name(c.result), io::format_double(c.measured).c_str(),
                    io::format_double(c.threshold).c_str(), c.note.empty() ? "" : "  ",
                    c.note.c_str());
    }
    int code = report_exit_code(rep);
    std::printf("experiment %s: %s\n", rep.experiment.c_str(),
                code == 0 ? "pass" : (code == 3 ? "fail" : "inconclusive"));
}

int cmd_norms(const std::string& input, const std::string& out_dir) {
    sampled_line_function u = io::parse_function_csv(io::read_text(input));
    norm_report merged = h12_seminorm(u);
    norm_report bmo = bmo_norm(u);
    norm_report vmo = vmo_modulus(u, {1.0, 0.5, 0.25});
    for (const auto& [key, value] : bmo.values) merged.values[key] = value;
    for (const auto& [key, value] : vmo.values) merged.values[key] = value;
    for (const std::string& n : bmo.notes) merged.notes.push_back(n);
    for (const std::string& n : vmo.notes) merged.notes.push_back(n);
    io::write_text_atomic(join_out(out_dir, "norms.json"), io::norm_report_json(merged));
    for (const auto& [key, value] : merged.values)
        std::printf("%s = %s\n", key.c_str(), io::format_double(value).c_str());
    return 0;
}

int cmd_synth(const std::string& input, const std::string& out_dir, std::uint64_t seed) {
    tangent_angle b = make_tangent_angle(io::parse_function_csv(io::read_text(input)));
    curve_samples c = normalize_curve(gamma_u(b)).first;
    norm_report ca = chord_arc_constant(c, 200000, seed);
    io::write_text_atomic(join_out(out_dir, "curve.csv"), io::curve_csv(c));
    io::write_text_atomic(join_out(out_dir, "chord_arc.json"), io::norm_report_json(ca));
    std::printf("curve samples: %zu, chord_arc_k = %s\n", c.size(),
                io::format_double(ca.value("chord_arc_k")).c_str());
    return 0;
}

int cmd_extend(const std::string& angle_file, const std::string& u_file,
               const std::string& out_dir, std::size_t grid, double window, std::size_t levels,
               double height) {
    sampled_line_function bs = io::parse_function_csv(io::read_text(angle_file));
    if (grid != 0) {
        line_grid g = make_line_grid(window, grid);
        std::vector<cplx> vals(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) vals[i] = bs.eval(g[i]);
        bs = make_sampled(g, vals);
    }
    tangent_angle b = make_tangent_angle(bs);
    half_plane_grid g = make_half_plane_grid(bs.grid, height, levels, true);

    extension_field ext;
    if (u_file.empty()) {
        ext = extension_base(b, g);
    } else {
        sampled_line_function uf = io::parse_function_csv(io::read_text(u_file));
        std::vector<cplx> vals(bs.grid.size());
        for (std::size_t i = 0; i < bs.grid.size(); ++i) vals[i] = uf.eval(bs.grid[i]);
        certified_extension tau = tau_bilipschitz(b, g);
        ext = extension_general(b, make_sampled(bs.grid, vals), tau.field);
    }
    beltrami_field mu = beltrami_of_field(ext);
    io::write_text_atomic(join_out(out_dir, "extension.csv"), io::field_csv(g, ext.values));
    io::write_text_atomic(join_out(out_dir, "beltrami.csv"), io::field_csv(g, mu.values));
    io::write_text_atomic(join_out(out_dir, "extend_summary.json"),
                          io::norm_report_json(wp_norm(mu)));
    std::printf("sup = %s, energy = %s\n", io::format_double(mu.sup_norm).c_str(),
                io::format_double(mu.wp_energy).c_str());
    return 0;
}

int cmd_weld(const std::string& input, const std::string& out_dir, std::size_t resolution) {
    curve_samples c = io::parse_curve_csv(io::read_text(input));
    curve_maps maps = riemann_maps(c, resolution);
    welding_record rec = welding_map(maps.left, maps.right, c);
    norm_report summary;
    summary.values["log_hp_h12"] = h12_seminorm(rec.log_h_prime).value("h12");
    summary.values["convergence_left"] = maps.left.convergence_delta;
    summary.values["convergence_right"] = maps.right.convergence_delta;
    summary.values["window"] = maps.left.engine.window;
    io::write_text_atomic(join_out(out_dir, "weld_h.csv"), io::map_csv(rec.h));
    io::write_text_atomic(join_out(out_dir, "weld_log_hp.csv"),
                          io::function_csv(rec.log_h_prime));
    io::write_text_atomic(join_out(out_dir, "weld_summary.json"),
                          io::norm_report_json(summary));
    std::printf("log h' seminorm = %s\n",
                io::format_double(summary.values["log_hp_h12"]).c_str());
    return 0;
}

experiment_report dispatch(const experiment_config& cfg, const std::string& name) {
    if (name == "continuity_sweep") return continuity_sweep(cfg);
    if (name == "energy_scaling") return energy_scaling(cfg);
    if (name == "characterization_chain") return characterization_chain(cfg);
    return symmetry_suite(cfg);
}

int cmd_verify(const std::string& config_file, const std::string& out_dir,
               const std::string& tolerance_file, bool emit_sweep_csv) {
    io::run_config rc = io::parse_run_config(io::read_text(config_file));
    merge_tolerance_file(rc, tolerance_file);
    if (emit_sweep_csv && rc.experiment != "continuity_sweep")
        throw std::invalid_argument("sweep requires a continuity_sweep config");
    experiment_config cfg = io::build_experiment(rc);
    experiment_report rep = dispatch(cfg, rc.experiment);
    io::write_text_atomic(join_out(out_dir, "report.json"), io::experiment_report_json(rep));
    if (emit_sweep_csv) {
        std::string csv = "# sweep csv: eps, distance\n";
        for (std::size_t k = 0; k < rc.ladder.size(); ++k) {
            std::string name = "forward_d_" + std::to_string(k);
            for (const check_record& c : rep.checks) {
                if (c.name == name) {
                    csv += io::format_double(rc.ladder[k]);
                    csv += ',';
                    csv += io::format_double(c.measured);
                    csv += '\n';
                }
            }
        }
        io::write_text_atomic(join_out(out_dir, "sweep.csv"), csv);
    }
    print_report(rep);
    return report_exit_code(rep);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weil-Petersson curve toolkit"};
    app.require_subcommand(1);

    std::string input, u_file, config_file, out_dir = ".", tolerance_file;
    std::size_t grid = 0, levels = 8, resolution = 768;
    double window = 8.0, height = 4.0;
    std::uint64_t seed = 0;

    CLI::App* norms = app.add_subcommand("norms", "boundary-function norms of a function csv");
    norms->add_option("input", input, "function csv")->required();
    norms->add_option("--out", out_dir, "output directory");

    CLI::App* synth = app.add_subcommand("synth", "curve from a tangent-angle csv");
    synth->add_option("input", input, "angle csv")->required();
    synth->add_option("--out", out_dir, "output directory");
    synth->add_option("--seed", seed, "chord-arc sampling seed");

    CLI::App* extend = app.add_subcommand("extend", "quasiconformal extension of an angle");
    extend->add_option("input", input, "angle csv")->required();
    extend->add_option("perturbation", u_file, "optional perturbation csv");
    extend->add_option("--out", out_dir, "output directory");
    extend->add_option("--grid", grid, "resample to this node count");
    extend->add_option("--window", window, "grid halfwidth when resampling");
    extend->add_option("--levels", levels, "dyadic height levels");
    extend->add_option("--height", height, "top level height");

    CLI::App* weld = app.add_subcommand("weld", "sewing data of a curve csv");
    weld->add_option("input", input, "curve csv")->required();
    weld->add_option("--out", out_dir, "output directory");
    weld->add_option("--resolution", resolution, "boundary samples per side");

    CLI::App* verify = app.add_subcommand("verify", "run the experiment in a config");
    verify->add_option("config", config_file, "run-config json")->required();
    verify->add_option("--out", out_dir, "output directory");
    verify->add_option("--tolerance-file", tolerance_file, "norm-report json of overrides");

    CLI::App* sweep = app.add_subcommand("sweep", "continuity sweep with plot data");
    sweep->add_option("config", config_file, "run-config json")->required();
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--tolerance-file", tolerance_file, "norm-report json of overrides");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (norms->parsed()) return cmd_norms(input, out_dir);
        if (synth->parsed()) return cmd_synth(input, out_dir, seed);
        if (extend->parsed())
            return cmd_extend(input, u_file, out_dir, grid, window, levels, height);
        if (weld->parsed()) return cmd_weld(input, out_dir, resolution);
        if (verify->parsed()) return cmd_verify(config_file, out_dir, tolerance_file, false);
        if (sweep->parsed()) return cmd_verify(config_file, out_dir, tolerance_file, true);
    } catch (const io::parse_error& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 1;
    } catch (const numerical_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    }
    return 1;
}
