#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace grained {

struct QuadOptions {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    int max_depth = 26;
};

struct QuadResult {
    double value = 0.0;
    double abs_err = 0.0;
    bool converged = true;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (positive half).
inline constexpr std::array<double, 8> gk_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> gk_wk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gk_wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
inline void gk15(F& f, double a, double b, double& kronrod, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = gk_wk[7] * fc, resg = gk_wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double d = h * gk_x[i];
        const double s = f(c - d) + f(c + d);
        resk += gk_wk[i] * s;
        if (i % 2 == 1) resg += gk_wg[i / 2] * s;
    }
    kronrod = resk * h;
    err = std::abs((resk - resg) * h);
}

template <class F>
inline void refine(F& f, double a, double b, double tol, int depth, QuadResult& acc) {
    double v, e;
    gk15(f, a, b, v, e);
    if (e <= tol || depth <= 0) {
        acc.value += v;
        acc.abs_err += e;
        if (e > tol) acc.converged = false;
        return;
    }
    const double m = 0.5 * (a + b);
    refine(f, a, m, 0.5 * tol, depth - 1, acc);
    refine(f, m, b, 0.5 * tol, depth - 1, acc);
}

} // namespace detail

// Adaptive Gauss-Kronrod integration of f over [a, b] with mandatory initial
// subdivision at the interior points of `splits` (kink locations).
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadOptions& opt,
                     const std::vector<double>& splits = {}) {
    QuadResult out;
    if (!(a < b)) return out;

    std::vector<double> knots;
    knots.push_back(a);
    for (double s : splits)
        if (s > a && s < b) knots.push_back(s);
    knots.push_back(b);
    std::sort(knots.begin(), knots.end());
    // drop near-duplicate knots (degenerate segments)
    std::vector<double> seg;
    seg.push_back(knots.front());
    for (double t : knots)
        if (t - seg.back() > 1e-14 * (std::abs(t) + std::abs(seg.back())) + 1e-300)
            seg.push_back(t);
    if (seg.size() < 2) return out;

    double rough = 0.0;
    for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
        double v, e;
        detail::gk15(f, seg[i], seg[i + 1], v, e);
        rough += std::abs(v);
    }
    const std::size_t n = seg.size() - 1;
    const double tol_total =
        std::max({opt.abs_tol, opt.rel_tol * rough, 1e-305});
    for (std::size_t i = 0; i + 1 < seg.size(); ++i)
        detail::refine(f, seg[i], seg[i + 1], tol_total / static_cast<double>(n),
                       opt.max_depth, out);
    return out;
}

// Monotone cubic Hermite interpolant (Fritsch-Carlson derivative limiting).
// Shape-preserving: no overshoot between data points, C^1 across nodes.
class Pchip {
public:
    Pchip() = default;

    Pchip(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)), d_(x_.size(), 0.0) {
        const std::size_t n = x_.size();
        if (n < 2) {
            if (n == 1) d_[0] = 0.0;
            return;
        }
        std::vector<double> h(n - 1), del(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            del[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            // three point parabolic slope, limited afterwards: the weighted
            // harmonic mean drops to first order wherever neighbouring
            // secants differ in size, which is exactly the neighbourhood of
            // every smooth extremum
            double d = (h[i] * del[i - 1] + h[i - 1] * del[i]) / (h[i - 1] + h[i]);
            const double lim = 3.0 * std::min(std::abs(del[i - 1]), std::abs(del[i]));
            if (del[i - 1] * del[i] > 0.0 && d * del[i] <= 0.0)
                d = 0.0; // wrong-signed slope inside a monotone stretch
            else if (std::abs(d) > lim)
                d = std::copysign(lim, d);
            d_[i] = d;
        }
        d_[0] = end_slope(h[0], n > 2 ? h[1] : h[0], del[0], n > 2 ? del[1] : del[0]);
        d_[n - 1] = end_slope(h[n - 2], n > 2 ? h[n - 3] : h[n - 2], del[n - 2],
                              n > 2 ? del[n - 3] : del[n - 2]);
    }

    double operator()(double t) const {
        const std::size_t n = x_.size();
        if (n == 0) return 0.0;
        if (n == 1 || t <= x_.front()) return y_.front();
        if (t >= x_.back()) return y_.back();
        const auto it = std::upper_bound(x_.begin(), x_.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
        const double h = x_[i + 1] - x_[i];
        const double s = (t - x_[i]) / h;
        const double s2 = s * s, s3 = s2 * s;
        const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
        const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
        return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
    }

    bool empty() const { return x_.empty(); }

private:
    static double end_slope(double h0, double h1, double d0, double d1) {
        double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (d * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::abs(d) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return d;
    }

    std::vector<double> x_, y_, d_;
};

// Self-refining piecewise interpolant of up to two expensive functions sampled
// on a shared grid.  Breakpoints mark known kinks; between them each component
// is approximated by a Pchip refined until midpoint residuals drop below
// rel_tol (measured against the global value scale).  The final residual is
// reported so callers can fold it into their own error accounting.
class AdaptiveInterp {
public:
    using Fn2 = std::function<std::array<double, 2>(double)>;

    AdaptiveInterp() = default;

    AdaptiveInterp(Fn2 f, std::vector<double> breakpoints, bool use_second,
                   double rel_tol, int init_pts = 9, int max_rounds = 7,
                   std::size_t max_pts = 4096)
        : use_second_(use_second) {
        std::sort(breakpoints.begin(), breakpoints.end());
        std::vector<double> bp;
        for (double t : breakpoints)
            if (bp.empty() ||
                t - bp.back() > 1e-13 * (std::abs(t) + std::abs(bp.back())) + 1e-300)
                bp.push_back(t);
        if (bp.empty()) return;
        bounds_ = bp;
        segs_.resize(bp.size() == 1 ? 1 : bp.size() - 1);
        if (bp.size() == 1) {
            push(0, bp[0], f(bp[0]));
            segs_[0].rebuild(use_second_);
            return;
        }
        for (std::size_t s = 0; s + 1 < bp.size(); ++s) {
            for (int i = 0; i <= init_pts; ++i)
                push(s, bp[s] + (bp[s + 1] - bp[s]) * i / init_pts, f);
            segs_[s].rebuild(use_second_);
        }
        double scale0 = 0.0, scale1 = 0.0;
        for (const auto& sg : segs_)
            for (std::size_t i = 0; i < sg.xs.size(); ++i) {
                scale0 = std::max(scale0, std::abs(sg.y0[i]));
                scale1 = std::max(scale1, std::abs(sg.y1[i]));
            }
        // kinks sit on segment ends, so inside a segment the data is smooth
        // and plain midpoint refinement converges at the full pchip rate;
        // residual_ always reflects the final grid, so the budget checks sit
        // between the measure and the insert
        for (int round = 0;; ++round) {
            double worst = 0.0;
            std::vector<std::vector<double>> nx(segs_.size()), n0(segs_.size()),
                n1(segs_.size());
            for (std::size_t s = 0; s < segs_.size(); ++s) {
                const auto& sg = segs_[s];
                for (std::size_t i = 0; i + 1 < sg.xs.size(); ++i) {
                    const double t = 0.5 * (sg.xs[i] + sg.xs[i + 1]);
                    const auto v = f(t);
                    double e = std::abs(sg.p0(t) - v[0]) /
                               std::max({std::abs(v[0]), 0.01 * scale0, 1e-300});
                    if (use_second_)
                        e = std::max(e, std::abs(sg.p1(t) - v[1]) /
                                            std::max({std::abs(v[1]), 0.01 * scale1,
                                                      1e-300}));
                    worst = std::max(worst, e);
                    nx[s].push_back(t);
                    n0[s].push_back(v[0]);
                    n1[s].push_back(v[1]);
                }
            }
            residual_ = worst;
            if (worst <= rel_tol) break;
            if (round >= max_rounds || total_pts() >= max_pts) break;
            // halve every interval at once: uneven spacing degrades the
            // monotone fit, and the midpoints are already evaluated anyway
            for (std::size_t s = 0; s < segs_.size(); ++s) {
                auto& sg = segs_[s];
                std::vector<double> mx, m0, m1;
                mx.reserve(sg.xs.size() + nx[s].size());
                m0.reserve(mx.capacity());
                m1.reserve(mx.capacity());
                std::size_t a = 0, b = 0;
                while (a < sg.xs.size() || b < nx[s].size()) {
                    if (b >= nx[s].size() ||
                        (a < sg.xs.size() && sg.xs[a] < nx[s][b])) {
                        mx.push_back(sg.xs[a]);
                        m0.push_back(sg.y0[a]);
                        m1.push_back(sg.y1[a]);
                        ++a;
                    } else {
                        mx.push_back(nx[s][b]);
                        m0.push_back(n0[s][b]);
                        m1.push_back(n1[s][b]);
                        ++b;
                    }
                }
                sg.xs = std::move(mx);
                sg.y0 = std::move(m0);
                sg.y1 = std::move(m1);
                sg.rebuild(use_second_);
            }
        }
    }

    double eval0(double t) const {
        const Seg* s = seg_for(t);
        return s ? s->p0(t) : 0.0;
    }
    double eval1(double t) const {
        const Seg* s = seg_for(t);
        return s ? s->p1(t) : 0.0;
    }
    // worst relative midpoint residual from the last refinement pass
    double residual() const { return residual_; }
    double lo() const { return bounds_.empty() ? 0.0 : bounds_.front(); }
    double hi() const { return bounds_.empty() ? 0.0 : bounds_.back(); }

private:
    struct Seg {
        std::vector<double> xs, y0, y1;
        Pchip p0, p1;
        void rebuild(bool second) {
            p0 = Pchip(xs, y0);
            if (second) p1 = Pchip(xs, y1);
        }
    };

    void push(std::size_t s, double t, const Fn2& f) { push(s, t, f(t)); }

    void push(std::size_t s, double t, std::array<double, 2> v) {
        segs_[s].xs.push_back(t);
        segs_[s].y0.push_back(v[0]);
        segs_[s].y1.push_back(v[1]);
    }

    std::size_t total_pts() const {
        std::size_t n = 0;
        for (const auto& sg : segs_) n += sg.xs.size();
        return n;
    }

    const Seg* seg_for(double t) const {
        if (segs_.empty()) return nullptr;
        if (segs_.size() == 1) return &segs_[0];
        const auto it = std::upper_bound(bounds_.begin(), bounds_.end(), t);
        std::size_t i =
            it == bounds_.begin() ? 0 : static_cast<std::size_t>(it - bounds_.begin()) - 1;
        if (i >= segs_.size()) i = segs_.size() - 1;
        return &segs_[i];
    }

    bool use_second_ = false;
    std::vector<double> bounds_;
    std::vector<Seg> segs_;
    double residual_ = 0.0;
};

} // namespace grained
