#include "wpc/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "wpc/errors.hpp"

namespace wpc {

namespace {

constexpr double pi = std::numbers::pi;

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// splitmix64, used for the deterministic pair subsample.
std::uint64_t mix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

tangent_angle make_tangent_angle(const sampled_line_function& samples) {
    if (!samples.is_real(0.0))
        throw std::invalid_argument("make_tangent_angle: angles must be real");
    return tangent_angle{samples};
}

cplx curve_samples::point_at(double s) const {
    if (s <= tags.front()) return points.front() + dir_left * (s - tags.front());
    if (s >= tags.back()) return points.back() + dir_right * (s - tags.back());
    auto it = std::upper_bound(tags.begin(), tags.end(), s);
    std::size_t i = static_cast<std::size_t>(it - tags.begin()) - 1;
    double t = (s - tags[i]) / (tags[i + 1] - tags[i]);
    return points[i] * (1.0 - t) + points[i + 1] * t;
}

std::size_t curve_samples::index_of_tag(double s) const {
    auto it = std::lower_bound(tags.begin(), tags.end(), s - 1e-12);
    if (it == tags.end() || std::abs(*it - s) > 1e-9)
        throw std::invalid_argument("curve_samples: requested tag is not a sample");
    return static_cast<std::size_t>(it - tags.begin());
}

void validate_curve(const curve_samples& c) {
    if (c.tags.size() != c.points.size() || c.tags.size() < 2)
        throw std::invalid_argument("curve_samples: tag/point mismatch");
    if (c.tags.front() > 0.0 || c.tags.back() < 0.0)
        throw std::invalid_argument("curve_samples: 0 must lie in the tag range");
    for (std::size_t i = 0; i + 1 < c.tags.size(); ++i) {
        double ds = c.tags[i + 1] - c.tags[i];
        if (!(ds > 0.0)) throw std::invalid_argument("curve_samples: tags must increase");
        double chord = std::abs(c.points[i + 1] - c.points[i]);
        if (chord > ds * (1.0 + 1e-9) || chord < ds * (1.0 - 1e-3))
            throw certification_error("curve_samples: unit-speed chord bound violated");
    }
    if (std::abs(std::abs(c.dir_left) - 1.0) > 1e-9 || std::abs(std::abs(c.dir_right) - 1.0) > 1e-9)
        throw std::invalid_argument("curve_samples: tail directions must be unit vectors");
}

curve_samples gamma_u(const tangent_angle& b) {
    const line_grid& g = b.samples.grid;
    validate_line_grid(g);
    std::size_t n = g.size();

    // Chord of one cell: the integral of e^{i(a + r (t - x_k))} over the
    // cell is h e^{i(a + r h / 2)} sinc(r h / 2).
    std::vector<cplx> chords(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double h = g.nodes[i + 1] - g.nodes[i];
        double a0 = b.samples.values[i].real();
        double a1 = b.samples.values[i + 1].real();
        double half = 0.5 * (a1 - a0);
        chords[i] = h * sinc(half) * std::exp(cplx(0.0, a0 + half));
    }

    curve_samples c;
    c.tags = g.nodes;
    c.points.resize(n);
    std::size_t zero = g.cell_of(0.0);
    if (g.nodes[zero] != 0.0 && g.nodes[zero + 1] == 0.0) ++zero;
    if (g.nodes[zero] != 0.0)
        throw std::invalid_argument("gamma_u: grid must contain 0 as a node");
    c.points[zero] = 0.0;
    for (std::size_t i = zero; i + 1 < n; ++i) c.points[i + 1] = c.points[i] + chords[i];
    for (std::size_t i = zero; i > 0; --i) c.points[i - 1] = c.points[i] - chords[i - 1];
    c.dir_left = std::exp(cplx(0.0, b.samples.values.front().real()));
    c.dir_right = std::exp(cplx(0.0, b.samples.values.back().real()));
    validate_curve(c);
    return c;
}

tangent_angle tangent_angle_from_curve(const curve_samples& c) {
    validate_curve(c);
    std::size_t n = c.size();
    line_grid mid;
    mid.nodes.resize(n - 1);
    std::vector<cplx> vals(n - 1);
    double prev = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        mid.nodes[i] = 0.5 * (c.tags[i] + c.tags[i + 1]);
        cplx chord = (c.points[i + 1] - c.points[i]) / (c.tags[i + 1] - c.tags[i]);
        double raw = std::arg(chord);
        if (i == 0) {
            prev = raw;
        } else {
            // Unwrap against the previous chord angle.
            double k = std::round((prev - raw) / (2.0 * pi));
            prev = raw + 2.0 * pi * k;
        }
        vals[i] = prev;
    }
    return make_tangent_angle(make_sampled(mid, vals));
}

norm_report chord_arc_constant(const curve_samples& c, std::size_t pair_budget,
                               std::uint64_t seed) {
    validate_curve(c);
    std::size_t n = c.size();
    double worst = 1.0;
    std::size_t checked = 0;

    auto probe = [&](std::size_t i, std::size_t j) {
        double ds = c.tags[j] - c.tags[i];
        double chord = std::abs(c.points[j] - c.points[i]);
        if (chord <= 0.0) {
            worst = std::numeric_limits<double>::infinity();
            return;
        }
        worst = std::max(worst, ds / chord);
        ++checked;
    };

    if (n * (n - 1) / 2 <= pair_budget) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) probe(i, j);
    } else {
        // Stratify by dyadic index separation so short and long chords are
        // probed evenly.
        std::size_t bands = 0;
        for (std::size_t sep = 1; sep < n; sep *= 2) ++bands;
        std::size_t per_band = std::max<std::size_t>(1, pair_budget / bands);
        std::uint64_t state = seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL;
        for (std::size_t sep = 1; sep < n; sep *= 2) {
            for (std::size_t k = 0; k < per_band; ++k) {
                std::size_t span = n - sep;
                std::size_t i = static_cast<std::size_t>(mix64(state) % span);
                std::size_t j = i + sep + (sep > 1 ? mix64(state) % sep : 0);
                if (j >= n) j = n - 1;
                probe(i, j);
            }
        }
    }

    norm_report rep;
    rep.values["chord_arc_k"] = worst - 1.0;
    rep.values["pairs_checked"] = static_cast<double>(checked);
    return rep;
}

std::pair<curve_samples, normalization_record> normalize_curve(const curve_samples& c) {
    validate_curve(c);
    std::size_t n = c.size();

    // Fresh arc-length tags from cumulative chords; the tag span of the
    // input fixes the overall scale so similarity inputs collapse to the
    // same output.
    std::vector<double> chord(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        chord[i] = chord[i - 1] + std::abs(c.points[i] - c.points[i - 1]);
    double scale = chord.back() / (c.tags.back() - c.tags.front());
    if (!(scale > 0.0)) throw numerical_error("normalize_curve: degenerate curve");

    // Tag 0 goes to the point at parameter 0 of the input.
    std::vector<double> xs = c.tags;
    double chord_at0 = interp_linear(xs, chord, 0.0);

    std::vector<double> tags(n);
    for (std::size_t i = 0; i < n; ++i) tags[i] = (chord[i] - chord_at0) / scale;

    cplx origin = c.point_at(0.0);
    if (tags.back() < 1.0)
        throw std::invalid_argument("normalize_curve: window too short to reach arc length 1");

    // Point at new arc length 1, before rotation.
    std::vector<double> re(n), im(n);
    for (std::size_t i = 0; i < n; ++i) {
        re[i] = (c.points[i] - origin).real();
        im[i] = (c.points[i] - origin).imag();
    }
    cplx p1{interp_linear(tags, re, 1.0), interp_linear(tags, im, 1.0)};
    if (std::abs(p1) == 0.0) throw numerical_error("normalize_curve: arc-length-1 point at origin");
    double rot = -std::arg(p1);
    cplx phase = std::exp(cplx(0.0, rot));

    curve_samples out;
    out.tags = std::move(tags);
    out.points.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.points[i] = phase * (c.points[i] - origin) / scale;
    out.dir_left = phase * c.dir_left;
    out.dir_right = phase * c.dir_right;
    validate_curve(out);

    normalization_record rec{-origin, rot, scale};
    return {out, rec};
}

curve_samples reflect_J(const curve_samples& c) {
    curve_samples out = c;
    for (cplx& p : out.points) p = std::conj(p);
    out.dir_left = std::conj(c.dir_left);
    out.dir_right = std::conj(c.dir_right);
    return out;
}

monotone_boundary_map curve_as_map(const curve_samples& c) {
    line_grid g;
    g.nodes = c.tags;
    validate_line_grid(g);
    return make_curve_map(g, c.points, c.dir_left, c.dir_right);
}

}  // namespace wpc
