#include "wpc/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wpc/fixtures.hpp"

namespace wpc::io {

namespace {

using nlohmann::json;

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

double parse_number(const std::string& token, std::size_t line_no) {
    const char* s = token.c_str();
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(s, &end);
    while (end && *end == ' ') ++end;
    if (end == s || (end && *end != '\0'))
        throw parse_error("line " + std::to_string(line_no) + ": bad number '" + token + "'");
    return v;
}

std::vector<double> parse_row(const std::string& line, std::size_t line_no,
                              std::size_t expect_cols) {
    std::vector<double> out;
    std::string token;
    std::stringstream ss(line);
    while (std::getline(ss, token, ',')) out.push_back(parse_number(token, line_no));
    if (out.size() != expect_cols)
        throw parse_error("line " + std::to_string(line_no) + ": expected " +
                          std::to_string(expect_cols) + " columns, got " +
                          std::to_string(out.size()));
    return out;
}

// Structured header comment "# key v1 v2 ..." -> tokens after the key.
bool header_values(const std::string& line, const std::string& key, std::size_t line_no,
                   std::size_t count, std::vector<double>& out) {
    std::string prefix = "# " + key + " ";
    if (line.rfind(prefix, 0) != 0) return false;
    std::stringstream ss(line.substr(prefix.size()));
    std::string token;
    out.clear();
    while (ss >> token) out.push_back(parse_number(token, line_no));
    if (out.size() != count)
        throw parse_error("line " + std::to_string(line_no) + ": header '" + key + "' needs " +
                          std::to_string(count) + " values");
    return true;
}

void append_rows_3(std::string& out, const std::vector<double>& xs,
                   const std::vector<cplx>& vals) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += format_double(xs[i]);
        out += ',';
        out += format_double(vals[i].real());
        out += ',';
        out += format_double(vals[i].imag());
        out += '\n';
    }
}

void json_escape(std::string& out, const std::string& s) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
}

// Non-finite values are not valid JSON numbers, so they travel as strings.
void json_number(std::string& out, double v) {
    if (std::isfinite(v)) {
        out += format_double(v);
    } else {
        out += v > 0 ? "\"inf\"" : (v < 0 ? "\"-inf\"" : "\"nan\"");
    }
}

double number_of(const json& j, const std::string& context) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "inf") return HUGE_VAL;
        if (s == "-inf") return -HUGE_VAL;
        if (s == "nan") return std::nan("");
    }
    throw parse_error(context + ": expected a number");
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw parse_error("line " + std::to_string(line) + ": " + e.what());
    }
}

void require_schema(const json& j, const std::string& schema) {
    if (!j.is_object() || !j.contains("schema") || j["schema"] != schema)
        throw parse_error("missing schema tag '" + schema + "'");
}

const json& field_of(const json& j, const char* key) {
    if (!j.contains(key)) throw parse_error(std::string("missing field '") + key + "'");
    return j[key];
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
        if (!out.good()) throw std::runtime_error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
    }
}

std::string function_csv(const sampled_line_function& u) {
    std::string out = "# function csv: x, re, im\n";
    append_rows_3(out, u.grid.nodes, u.values);
    return out;
}

sampled_line_function parse_function_csv(const std::string& text) {
    std::vector<double> xs;
    std::vector<cplx> vals;
    std::vector<std::string> lines = split_lines(text);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const std::string& line = lines[n];
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row = parse_row(line, n + 1, 3);
        xs.push_back(row[0]);
        vals.emplace_back(row[1], row[2]);
    }
    if (xs.size() < 2) throw parse_error("function csv needs at least 2 rows");
    return make_sampled(line_grid{xs}, vals);
}

std::string curve_csv(const curve_samples& c) {
    std::string out = "# curve csv: tag, re, im\n";
    out += "# dir_left " + format_double(c.dir_left.real()) + " " +
           format_double(c.dir_left.imag()) + "\n";
    out += "# dir_right " + format_double(c.dir_right.real()) + " " +
           format_double(c.dir_right.imag()) + "\n";
    append_rows_3(out, c.tags, c.points);
    return out;
}

curve_samples parse_curve_csv(const std::string& text) {
    curve_samples c;
    bool saw_left = false, saw_right = false;
    std::vector<double> header;
    std::vector<std::string> lines = split_lines(text);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const std::string& line = lines[n];
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (header_values(line, "dir_left", n + 1, 2, header)) {
                c.dir_left = {header[0], header[1]};
                saw_left = true;
            } else if (header_values(line, "dir_right", n + 1, 2, header)) {
                c.dir_right = {header[0], header[1]};
                saw_right = true;
            }
            continue;
        }
        std::vector<double> row = parse_row(line, n + 1, 3);
        c.tags.push_back(row[0]);
        c.points.emplace_back(row[1], row[2]);
    }
    if (!saw_left || !saw_right) throw parse_error("curve csv: missing dir_left/dir_right header");
    validate_curve(c);
    return c;
}

std::string map_csv(const monotone_boundary_map& m) {
    std::string out = "# map csv: x, re, im\n";
    out += "# slope_left " + format_double(m.slope_left.real()) + " " +
           format_double(m.slope_left.imag()) + "\n";
    out += "# slope_right " + format_double(m.slope_right.real()) + " " +
           format_double(m.slope_right.imag()) + "\n";
    out += std::string("# monotone_real ") + (m.monotone_real ? "1" : "0") + "\n";
    append_rows_3(out, m.grid.nodes, m.values);
    return out;
}

monotone_boundary_map parse_map_csv(const std::string& text) {
    std::vector<double> xs;
    std::vector<cplx> vals;
    cplx slope_left = 1.0, slope_right = 1.0;
    bool real_flag = true;
    std::vector<double> header;
    std::vector<std::string> lines = split_lines(text);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const std::string& line = lines[n];
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (header_values(line, "slope_left", n + 1, 2, header))
                slope_left = {header[0], header[1]};
            else if (header_values(line, "slope_right", n + 1, 2, header))
                slope_right = {header[0], header[1]};
            else if (header_values(line, "monotone_real", n + 1, 1, header))
                real_flag = header[0] != 0.0;
            continue;
        }
        std::vector<double> row = parse_row(line, n + 1, 3);
        xs.push_back(row[0]);
        vals.emplace_back(row[1], row[2]);
    }
    if (xs.size() < 2) throw parse_error("map csv needs at least 2 rows");
    line_grid g{xs};
    if (real_flag) {
        std::vector<double> rv(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) rv[i] = vals[i].real();
        return make_monotone_map(g, rv);
    }
    return make_curve_map(g, vals, slope_left, slope_right);
}

std::string field_csv(const half_plane_grid& g, const field_matrix& m) {
    std::string out = "# field csv: x, y, re, im\n";
    out += std::string("# upper ") + (g.upper ? "1" : "0") + "\n";
    for (std::size_t j = 0; j < g.ny(); ++j) {
        for (std::size_t i = 0; i < g.nx(); ++i) {
            out += format_double(g.xgrid[i]);
            out += ',';
            out += format_double(g.y_at(j));
            out += ',';
            out += format_double(m[j][i].real());
            out += ',';
            out += format_double(m[j][i].imag());
            out += '\n';
        }
    }
    return out;
}

std::pair<half_plane_grid, field_matrix> parse_field_csv(const std::string& text) {
    bool upper = true;
    std::vector<double> xs, ys;
    std::vector<cplx> flat;
    std::vector<double> header;
    std::vector<std::string> lines = split_lines(text);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const std::string& line = lines[n];
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (header_values(line, "upper", n + 1, 1, header)) upper = header[0] != 0.0;
            continue;
        }
        std::vector<double> row = parse_row(line, n + 1, 4);
        if (ys.empty() || ys.back() != row[1]) ys.push_back(row[1]);
        if (ys.size() == 1) xs.push_back(row[0]);
        flat.emplace_back(row[2], row[3]);
    }
    if (xs.empty() || ys.empty() || flat.size() != xs.size() * ys.size())
        throw parse_error("field csv: ragged level blocks");
    half_plane_grid g;
    g.xgrid = line_grid{xs};
    g.upper = upper;
    g.ylevels.resize(ys.size());
    for (std::size_t j = 0; j < ys.size(); ++j) g.ylevels[j] = std::abs(ys[j]);
    validate_half_plane_grid(g);
    field_matrix m = make_field_matrix(g);
    for (std::size_t j = 0; j < ys.size(); ++j)
        for (std::size_t i = 0; i < xs.size(); ++i) m[j][i] = flat[j * xs.size() + i];
    return {g, m};
}

std::string norm_report_json(const norm_report& r) {
    std::string out = "{\n  \"schema\": \"norm-report/1\",\n  \"values\": {";
    bool first = true;
    for (const auto& [key, value] : r.values) {
        out += first ? "\n" : ",\n";
        out += "    ";
        json_escape(out, key);
        out += ": ";
        json_number(out, value);
        first = false;
    }
    out += "\n  },\n  \"grid_note\": ";
    json_escape(out, r.grid_note);
    out += ",\n  \"notes\": [";
    for (std::size_t i = 0; i < r.notes.size(); ++i) {
        out += i ? ", " : "";
        json_escape(out, r.notes[i]);
    }
    out += "]\n}\n";
    return out;
}

norm_report parse_norm_report(const std::string& text) {
    json j = parse_json(text);
    require_schema(j, "norm-report/1");
    norm_report r;
    for (const auto& [key, value] : field_of(j, "values").items())
        r.values[key] = number_of(value, "values." + key);
    r.grid_note = field_of(j, "grid_note").get<std::string>();
    for (const auto& note : field_of(j, "notes")) r.notes.push_back(note.get<std::string>());
    return r;
}

std::string experiment_report_json(const experiment_report& r) {
    char hash_buf[32];
    std::snprintf(hash_buf, sizeof hash_buf, "0x%016llx",
                  static_cast<unsigned long long>(r.config_hash));
    std::string out = "{\n  \"schema\": \"experiment-report/1\",\n  \"experiment\": ";
    json_escape(out, r.experiment);
    out += ",\n  \"config_hash\": \"";
    out += hash_buf;
    out += "\",\n  \"resolutions\": [";
    for (std::size_t i = 0; i < r.resolutions.size(); ++i) {
        out += i ? ", " : "";
        out += std::to_string(r.resolutions[i]);
    }
    out += "],\n  \"checks\": [";
    for (std::size_t i = 0; i < r.checks.size(); ++i) {
        const check_record& c = r.checks[i];
        out += i ? ",\n    {" : "\n    {";
        out += "\"name\": ";
        json_escape(out, c.name);
        out += ", \"verdict\": ";
        json_escape(out, verdict_name(c.result));
        out += ", \"measured\": ";
        json_number(out, c.measured);
        out += ", \"threshold\": ";
        json_number(out, c.threshold);
        out += ", \"note\": ";
        json_escape(out, c.note);
        out += "}";
    }
    out += "\n  ]\n}\n";
    return out;
}

experiment_report parse_experiment_report(const std::string& text) {
    json j = parse_json(text);
    require_schema(j, "experiment-report/1");
    experiment_report r;
    r.experiment = field_of(j, "experiment").get<std::string>();
    std::string hash = field_of(j, "config_hash").get<std::string>();
    r.config_hash = std::stoull(hash, nullptr, 16);
    for (const auto& res : field_of(j, "resolutions"))
        r.resolutions.push_back(res.get<std::size_t>());
    for (const auto& jc : field_of(j, "checks")) {
        check_record c;
        c.name = field_of(jc, "name").get<std::string>();
        std::string v = field_of(jc, "verdict").get<std::string>();
        if (v == "pass")
            c.result = verdict::pass;
        else if (v == "fail")
            c.result = verdict::fail;
        else if (v == "inconclusive")
            c.result = verdict::inconclusive;
        else
            throw parse_error("unknown verdict '" + v + "'");
        c.measured = number_of(field_of(jc, "measured"), "measured");
        c.threshold = number_of(field_of(jc, "threshold"), "threshold");
        c.note = field_of(jc, "note").get<std::string>();
        r.checks.push_back(c);
    }
    return r;
}

namespace {

void profile_json(std::string& out, const profile_spec& p) {
    if (!p.file.empty()) {
        out += "{\"file\": ";
        json_escape(out, p.file);
        out += "}";
    } else {
        out += "{\"profile\": ";
        json_escape(out, p.profile);
        out += ", \"amplitude\": ";
        json_number(out, p.amplitude);
        out += "}";
    }
}

profile_spec parse_profile(const json& j, const std::string& context) {
    profile_spec p;
    if (j.contains("file")) {
        p.file = j["file"].get<std::string>();
        if (j.contains("profile")) throw parse_error(context + ": give profile or file, not both");
    } else if (j.contains("profile")) {
        p.profile = j["profile"].get<std::string>();
        p.amplitude = number_of(field_of(j, "amplitude"), context + ".amplitude");
    } else {
        throw parse_error(context + ": needs 'profile' or 'file'");
    }
    return p;
}

}  // namespace

std::string run_config_json(const run_config& c) {
    std::string out = "{\n  \"schema\": \"run-config/1\",\n  \"experiment\": ";
    json_escape(out, c.experiment);
    out += ",\n  \"base\": ";
    profile_json(out, c.base);
    out += ",\n  \"perturbation\": ";
    profile_json(out, c.perturbation);
    out += ",\n  \"ladder\": [";
    for (std::size_t i = 0; i < c.ladder.size(); ++i) {
        out += i ? ", " : "";
        json_number(out, c.ladder[i]);
    }
    out += "],\n  \"grid\": " + std::to_string(c.grid);
    out += ",\n  \"window\": ";
    json_number(out, c.window);
    out += ",\n  \"resolution\": " + std::to_string(c.resolution);
    out += ",\n  \"levels\": " + std::to_string(c.levels);
    out += ",\n  \"height\": ";
    json_number(out, c.height);
    out += ",\n  \"seed\": " + std::to_string(c.seed);
    out += ",\n  \"tolerances\": {";
    bool first = true;
    for (const auto& [key, value] : c.tolerances) {
        out += first ? "\n" : ",\n";
        out += "    ";
        json_escape(out, key);
        out += ": ";
        json_number(out, value);
        first = false;
    }
    out += first ? "}" : "\n  }";
    out += "\n}\n";
    return out;
}

run_config parse_run_config(const std::string& text) {
    json j = parse_json(text);
    require_schema(j, "run-config/1");
    run_config c;
    c.experiment = field_of(j, "experiment").get<std::string>();
    c.base = parse_profile(field_of(j, "base"), "base");
    c.perturbation = parse_profile(field_of(j, "perturbation"), "perturbation");
    if (j.contains("ladder")) {
        c.ladder.clear();
        for (const auto& e : j["ladder"]) c.ladder.push_back(number_of(e, "ladder"));
    }
    if (j.contains("grid")) c.grid = j["grid"].get<std::size_t>();
    if (j.contains("window")) c.window = number_of(j["window"], "window");
    if (j.contains("resolution")) c.resolution = j["resolution"].get<std::size_t>();
    if (j.contains("levels")) c.levels = j["levels"].get<std::size_t>();
    if (j.contains("height")) c.height = number_of(j["height"], "height");
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tolerances"))
        for (const auto& [key, value] : j["tolerances"].items())
            c.tolerances[key] = number_of(value, "tolerances." + key);
    return c;
}

namespace {

sampled_line_function resolve_profile(const profile_spec& p, const line_grid& g) {
    if (!p.file.empty()) {
        sampled_line_function u = parse_function_csv(read_text(p.file));
        std::vector<cplx> vals(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) vals[i] = u.eval(g[i]);
        return make_sampled(g, vals);
    }
    if (p.profile == "zero") return make_sampled(g, std::vector<cplx>(g.size(), 0.0));
    return fixtures::profile_angle(p.profile, p.amplitude, g).samples;
}

}  // namespace

experiment_config build_experiment(const run_config& c) {
    static const char* known[] = {"continuity_sweep", "energy_scaling", "characterization_chain",
                                  "symmetry_suite"};
    bool ok = false;
    for (const char* name : known) ok = ok || c.experiment == name;
    if (!ok) throw std::invalid_argument("unknown experiment '" + c.experiment + "'");

    experiment_config cfg;
    line_grid g = make_line_grid(c.window, c.grid);
    cfg.base_angle = make_tangent_angle(resolve_profile(c.base, g));
    cfg.perturbation = resolve_profile(c.perturbation, g);
    cfg.epsilon_ladder = c.ladder;
    cfg.map_resolution = c.resolution;
    cfg.field_levels = c.levels;
    cfg.field_height = c.height;
    cfg.seed = c.seed;
    cfg.tolerances = c.tolerances;
    validate_config(cfg);
    return cfg;
}

}  // namespace wpc::io
