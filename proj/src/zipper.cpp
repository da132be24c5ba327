#include "wpc/zipper.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "wpc/errors.hpp"

namespace wpc {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx iunit{0.0, 1.0};
constexpr std::size_t no_tag = std::numeric_limits<std::size_t>::max();

double orient(const cplx& a, const cplx& b, const cplx& p) {
    return (b.real() - a.real()) * (p.imag() - a.imag()) -
           (b.imag() - a.imag()) * (p.real() - a.real());
}

// Strict crossing of closed segments; collinear contact does not count, so
// the straight tail chords of a line do not report each other.
bool segments_cross(const cplx& a, const cplx& b, const cplx& c, const cplx& d) {
    double o1 = orient(a, b, c);
    double o2 = orient(a, b, d);
    double o3 = orient(c, d, a);
    double o4 = orient(c, d, b);
    return o1 * o2 < 0.0 && o3 * o4 < 0.0;
}

void check_jordan(const std::vector<cplx>& z) {
    const std::size_t n = z.size();
    std::vector<double> xlo(n - 1), xhi(n - 1), ylo(n - 1), yhi(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        xlo[i] = std::min(z[i].real(), z[i + 1].real());
        xhi[i] = std::max(z[i].real(), z[i + 1].real());
        ylo[i] = std::min(z[i].imag(), z[i + 1].imag());
        yhi[i] = std::max(z[i].imag(), z[i + 1].imag());
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 2; j + 1 < n; ++j) {
            if (xhi[i] < xlo[j] || xhi[j] < xlo[i]) continue;
            if (yhi[i] < ylo[j] || yhi[j] < ylo[i]) continue;
            if (segments_cross(z[i], z[i + 1], z[j], z[j + 1]))
                throw not_jordan_error("curve samples self-intersect at this resolution");
        }
    }
}

double step_forward_real(const zipper_step& st, double x) {
    double m = x;
    if (!st.vertical) m = st.d * x / (st.d - x);
    double s = std::copysign(std::hypot(m, st.h), m);
    if (st.vertical) return s;
    if (!std::isfinite(s)) return -st.p;
    return st.p * s / (st.p - s);
}

// The square roots below stay on the correct branch on the open half plane
// as long as the ratio forms w*sqrt(1 + (h/w)^2) and v*sqrt(1 - (h/v)^2)
// are used; expanding them under a single radical moves the cut onto the
// imaginary axis and breaks the second quadrant.
cplx step_forward(const zipper_step& st, cplx w) {
    cplx m = w;
    if (!st.vertical) m = w / (1.0 - w / st.d);
    cplx q = st.h / m;
    cplx s = m * std::sqrt(1.0 + q * q);
    if (st.vertical) return s;
    return s / (1.0 - s / st.p);
}

struct pull_result {
    cplx v;
    cplx factor;
};

// Inverse of one step together with its derivative. On the real axis the
// slit preimage [-h, h] must be lifted to the upper bank explicitly; the
// complex formula cannot decide the side there because the sign of a zero
// imaginary part is not trustworthy after real arithmetic.
pull_result step_pull(const zipper_step& st, cplx v, bool boundary) {
    cplx f = 1.0;
    cplx t = v;
    if (!st.vertical) {
        cplx den = 1.0 + v / st.p;
        t = v / den;
        f /= den * den;
    }
    cplx s;
    if (boundary && t.imag() == 0.0) {
        double x = t.real();
        if (std::abs(x) < st.h) {
            s = cplx(0.0, std::sqrt((st.h - x) * (st.h + x)));
        } else {
            s = cplx(std::copysign(std::sqrt((x - st.h) * (x + st.h)), x), 0.0);
        }
    } else {
        cplx q = st.h / t;
        s = t * std::sqrt(1.0 - q * q);
    }
    f *= t / s;
    cplx u = s;
    if (!st.vertical) {
        cplx den = 1.0 + s / st.d;
        u = s / den;
        f /= den * den;
    }
    return {u, f};
}

// Running product of derivative factors, flushed into a log sum before it
// can overflow. The imaginary part of the total is only defined modulo
// 2*pi, which is all the callers need.
struct log_acc {
    cplx sum{0.0, 0.0};
    cplx prod{1.0, 0.0};

    void mul(const cplx& f) {
        prod *= f;
        double n = std::norm(prod);
        if (!(n > 1e-200) || n > 1e200) {
            sum += std::log(prod);
            prod = 1.0;
        }
    }

    cplx total() const { return sum + std::log(prod); }
};

zipper_value eval_map(const zipper_engine& e, cplx w, bool upper_side, bool boundary) {
    const side_gauge& g = upper_side ? e.upper : e.lower;
    const double det = g.gd * g.pole - g.gb;
    log_acc acc;
    cplx v;
    if (boundary) {
        double x = w.real();
        double den = x + g.gd;
        double cv = (g.pole * x + g.gb) / den;
        acc.mul(cplx(det / (den * den), 0.0));
        double mag = std::pow(std::abs(cv), 1.0 / g.beta);
        if (upper_side) {
            v = cv < 0.0 ? cplx(-mag, 0.0) : std::polar(mag, e.theta_star);
        } else {
            v = cv > 0.0 ? cplx(mag, 0.0) : std::polar(mag, e.theta_star);
        }
        acc.mul(v / (g.beta * cv));
    } else {
        cplx den = w + g.gd;
        cplx cv = (g.pole * w + g.gb) / den;
        acc.mul(det / (den * den));
        v = std::pow(cv, 1.0 / g.beta);
        if (upper_side) v *= std::polar(1.0, e.theta_star);
        acc.mul(v / (g.beta * cv));
    }
    for (std::size_t k = e.steps.size(); k-- > 0;) {
        pull_result r = step_pull(e.steps[k], v, boundary);
        v = r.v;
        acc.mul(r.factor);
    }
    cplx w2 = v * v;
    cplx dd = w2 - e.phase;
    cplx z = (w2 * e.za - e.phase * e.zb) / dd;
    acc.mul(2.0 * v * e.phase * (e.zb - e.za) / (dd * dd));
    return {z, acc.total()};
}

}  // namespace

zipper_engine build_zipper(const curve_samples& c, std::size_t resolution) {
    if (resolution < 256 || resolution > (std::size_t{1} << 20))
        throw std::invalid_argument("build_zipper: resolution out of range");

    zipper_engine e;
    e.resolution = resolution;

    double span = std::max(std::abs(c.tags.front()), std::abs(c.tags.back()));
    double w_half = std::ceil(span) + 1.0;
    e.window = w_half;

    const std::size_t n_tail = 64;
    const double far_tag = 1.0e9;
    std::size_t body = resolution > 2 * n_tail + 32 ? resolution - 2 * n_tail : 32;
    std::size_t m = std::max<std::size_t>(
        4, static_cast<std::size_t>(std::llround(0.5 * static_cast<double>(body) / w_half)));
    const long kmax = static_cast<long>(std::llround(w_half)) * static_cast<long>(m);

    std::vector<double>& tags = e.tags;
    tags.reserve(2 * (static_cast<std::size_t>(kmax) + n_tail) + 1);
    double ratio = std::pow(far_tag / w_half, 1.0 / static_cast<double>(n_tail));
    for (std::size_t j = n_tail; j >= 1; --j)
        tags.push_back(-w_half * std::pow(ratio, static_cast<double>(j)));
    for (long k = -kmax; k <= kmax; ++k)
        tags.push_back(static_cast<double>(k) / static_cast<double>(m));
    for (std::size_t j = 1; j <= n_tail; ++j)
        tags.push_back(w_half * std::pow(ratio, static_cast<double>(j)));
    tags.front() = -far_tag;
    tags.back() = far_tag;

    const std::size_t n = tags.size();
    const std::size_t ib = n_tail;
    const std::size_t idx_zero = n_tail + static_cast<std::size_t>(kmax);
    const std::size_t idx_one = idx_zero + m;

    std::vector<cplx> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = c.point_at(tags[i]);
    check_jordan(pts);

    // Opening edge between the window edge sample and its inner neighbour.
    // The slit is the circular arc through a third curve point halfway in
    // between, so on straight stretches it is the exact curve piece.
    e.za = pts[ib];
    e.zb = pts[ib + 1];
    cplx zm = c.point_at(0.5 * (tags[ib] + tags[ib + 1]));
    cplx rr = (e.zb - zm) / (e.za - zm);
    double ra = std::abs(rr);
    if (!std::isfinite(ra) || !(ra > 0.0))
        throw resolution_error("opening arc degenerates");
    e.phase = std::conj(rr) / ra;

    auto open_w = [&](const cplx& z) {
        cplx nu = e.phase * (e.zb - z) / (e.za - z);
        return iunit * std::sqrt(-nu);
    };

    // Traversal order: rightward from the opening edge, out along the right
    // tail, through the curve point at infinity, back in along the left
    // tail. The infinity node is carried like any other sample; its final
    // seam position becomes the pole of the boundary gauge, which is what
    // pins the image of infinity exactly.
    struct chain_entry {
        cplx w;
        std::size_t tag_idx;
    };
    std::vector<chain_entry> chain;
    chain.reserve(n);
    for (std::size_t i = ib + 2; i < n; ++i) chain.push_back({open_w(pts[i]), i});
    chain.push_back({iunit * std::sqrt(-e.phase), no_tag});
    for (std::size_t i = 0; i < ib; ++i) chain.push_back({open_w(pts[i]), i});

    double diam = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(tags[i]) <= w_half) diam = std::max(diam, std::abs(pts[i]));
    cplx probe = open_w(c.point_at(0.5 * (tags[ib - 1] + tags[ib])));
    cplx tpoint = open_w(cplx(0.0, 2.0 + diam));

    for (const chain_entry& ce : chain)
        if (!(ce.w.imag() > 0.0))
            throw resolution_error("curve sample falls outside the opened half plane");

    e.steps.reserve(chain.size());
    std::vector<double> seam_neg, seam_pos;
    seam_neg.reserve(chain.size() + 1);
    seam_pos.reserve(chain.size() + 1);

    for (std::size_t k = 0; k < chain.size(); ++k) {
        cplx a = chain[k].w;
        double aa = std::abs(a);
        if (!std::isfinite(aa) || !(aa > 0.0) || !(a.imag() > 1e-12 * aa))
            throw resolution_error("slit step degenerates; refine the sampling");
        zipper_step st;
        double re = a.real();
        double im = a.imag();
        st.vertical = std::abs(re) <= 1e-12 * im;
        if (st.vertical) {
            st.h = aa;
        } else {
            double a2 = aa * aa;
            st.d = a2 / re;
            st.h = a2 / im;
            st.p = -std::copysign(std::hypot(st.d, st.h), st.d);
        }
        for (double& x : seam_neg) x = step_forward_real(st, x);
        for (double& x : seam_pos) x = step_forward_real(st, x);
        if (st.vertical) {
            seam_neg.push_back(-st.h);
            seam_pos.push_back(st.h);
        } else {
            seam_neg.push_back(-st.p * st.h / (st.p + st.h));
            seam_pos.push_back(st.p * st.h / (st.p - st.h));
        }
        for (std::size_t j = k + 1; j < chain.size(); ++j)
            chain[j].w = step_forward(st, chain[j].w);
        probe = step_forward(st, probe);
        tpoint = step_forward(st, tpoint);
        e.steps.push_back(st);
    }
    seam_neg.push_back(0.0);
    seam_pos.push_back(0.0);

    double theta = std::arg(probe);
    if (!(theta > 1e-3) || !(theta < pi - 1e-3))
        throw resolution_error("closing angle degenerates");
    e.theta_star = theta;
    if (!(std::arg(tpoint) > theta))
        throw numerical_error("side discovery failed for the upper domain");
    double beta_up = pi / (pi - theta);
    double beta_lo = pi / theta;

    const std::size_t zn = seam_neg.size();
    std::vector<double> cu(zn), cl(zn);
    for (std::size_t i = 0; i < zn; ++i) {
        double xn = seam_neg[i];
        double xp = seam_pos[i];
        if (i + 1 < zn &&
            (!std::isfinite(xn) || !std::isfinite(xp) || !(xn < 0.0) || !(xp > 0.0)))
            throw numerical_error("seam tracking lost its sign structure");
        cu[i] = xn == 0.0 ? 0.0 : -std::pow(-xn, beta_up);
        cl[i] = xp == 0.0 ? 0.0 : std::pow(xp, beta_lo);
    }

    auto tag_of_entry = [&](std::size_t i) {
        return i == 0 ? ib + 1 : chain[i - 1].tag_idx;
    };
    std::size_t entry_zero = no_tag, entry_one = no_tag, entry_inf = no_tag;
    for (std::size_t i = 0; i < zn; ++i) {
        std::size_t t = tag_of_entry(i);
        if (t == idx_zero) entry_zero = i;
        if (t == idx_one) entry_one = i;
        if (t == no_tag) entry_inf = i;
    }

    auto make_gauge = [](double r0, double r1, double x0, double beta, bool upper) {
        side_gauge g;
        g.beta = beta;
        g.pole = x0;
        g.gd = (x0 - r1) / (r1 - r0);
        g.gb = g.gd * r0;
        double det = g.gd * (x0 - r0);
        if (!std::isfinite(det) || (upper ? !(det > 0.0) : !(det < 0.0)))
            throw numerical_error("boundary gauge degenerates");
        return g;
    };
    e.upper = make_gauge(cu[entry_zero], cu[entry_one], cu[entry_inf], beta_up, true);
    e.lower = make_gauge(cl[entry_zero], cl[entry_one], cl[entry_inf], beta_lo, false);

    auto kmap = [](const side_gauge& g, double v) {
        return (g.gd * v - g.gb) / (g.pole - v);
    };
    e.h_upper.assign(n, 0.0);
    e.h_lower.assign(n, 0.0);
    e.h_upper[ib] = -e.upper.gd;
    e.h_lower[ib] = -e.lower.gd;
    for (std::size_t i = 0; i < zn; ++i) {
        std::size_t t = tag_of_entry(i);
        if (t == no_tag) continue;
        e.h_upper[t] = kmap(e.upper, cu[i]);
        e.h_lower[t] = kmap(e.lower, cl[i]);
    }
    e.h_upper[idx_zero] = 0.0;
    e.h_lower[idx_zero] = 0.0;
    e.h_upper[idx_one] = 1.0;
    e.h_lower[idx_one] = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(e.h_upper[i] < e.h_upper[i + 1]) || !(e.h_lower[i] < e.h_lower[i + 1]))
            throw numerical_error("boundary correspondence lost monotonicity; refine the sampling");

    return e;
}

zipper_value zipper_map(const zipper_engine& e, cplx w, bool upper_side) {
    bool inside = upper_side ? w.imag() > 0.0 : w.imag() < 0.0;
    if (!inside)
        throw std::invalid_argument("zipper_map: point is not inside the requested side");
    return eval_map(e, w, upper_side, false);
}

zipper_value zipper_boundary(const zipper_engine& e, double x, bool upper_side) {
    return eval_map(e, cplx(x, 0.0), upper_side, true);
}

}  // namespace wpc
