#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "errors.hpp"
#include "quad.hpp"

namespace grained {

namespace polyops {

// dense univariate polynomials over mpq, ascending degree
using Coeffs = std::vector<mpq_class>;

inline void trim(Coeffs& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline mpq_class eval(const Coeffs& p, const mpq_class& t) {
    mpq_class v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * t + p[i];
    return v;
}

inline double eval_d(const Coeffs& p, double t) {
    double v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * t + p[i].get_d();
    return v;
}

inline Coeffs add(const Coeffs& a, const Coeffs& b) {
    Coeffs r(std::max(a.size(), b.size()), mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

inline Coeffs sub(const Coeffs& a, const Coeffs& b) {
    Coeffs r(std::max(a.size(), b.size()), mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

inline Coeffs derivative(const Coeffs& p) {
    if (p.size() < 2) return {};
    Coeffs r(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * static_cast<long>(i);
    return r;
}

inline Coeffs antiderivative(const Coeffs& p) {
    Coeffs r(p.size() + 1, mpq_class(0));
    for (std::size_t i = 0; i < p.size(); ++i)
        r[i + 1] = p[i] / mpq_class(static_cast<long>(i + 1));
    trim(r);
    return r;
}

// p(t - c) by binomial expansion
inline Coeffs shift(const Coeffs& p, const mpq_class& c) {
    Coeffs r(p.size(), mpq_class(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
        // add p[i] * (t - c)^i; coef walks C(i,j)(-c)^(i-j) from j = i down
        mpq_class coef = 1;
        for (std::size_t j = i + 1; j-- > 0;) {
            r[j] += p[i] * coef;
            if (j > 0)
                coef = coef * (-c) * static_cast<long>(j) / static_cast<long>(i - j + 1);
        }
    }
    trim(r);
    return r;
}

} // namespace polyops

// Piecewise polynomial on ascending knots, right-continuous at every knot,
// zero outside [knots.front(), knots.back()).  For hills: knots 0..k, exact
// rational coefficients in the global variable.
struct PiecewisePoly {
    std::vector<mpq_class> knots;              // size = pieces.size() + 1
    std::vector<polyops::Coeffs> pieces;

    std::size_t piece_index(const mpq_class& xi) const {
        // largest j with knots[j] <= xi (xi inside support)
        std::size_t lo = 0, hi = pieces.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi + 1) / 2;
            if (xi >= knots[mid]) lo = mid; else hi = mid - 1;
        }
        return lo;
    }

    mpq_class eval(const mpq_class& xi) const {
        if (pieces.empty() || xi < knots.front() || xi >= knots.back()) return 0;
        return polyops::eval(pieces[piece_index(xi)], xi);
    }

    double eval(double xi) const {
        if (pieces.empty()) return 0.0;
        const double lo = knots.front().get_d(), hi = knots.back().get_d();
        if (xi < lo || xi >= hi) return 0.0;
        std::size_t j = pieces.size() - 1;
        while (j > 0 && xi < knots[j].get_d()) --j;
        return polyops::eval_d(pieces[j], xi);
    }

    PiecewisePoly derivative() const {
        PiecewisePoly r;
        r.knots = knots;
        r.pieces.reserve(pieces.size());
        for (const auto& p : pieces) r.pieces.push_back(polyops::derivative(p));
        return r;
    }

    // exact integral over [a, b] (a <= b), support-clipped
    mpq_class integral(const mpq_class& a, const mpq_class& b) const {
        if (pieces.empty()) return 0;
        mpq_class total = 0;
        for (std::size_t j = 0; j < pieces.size(); ++j) {
            const mpq_class lo = a > knots[j] ? a : knots[j];
            const mpq_class hi = b < knots[j + 1] ? b : knots[j + 1];
            if (hi <= lo) continue;
            const auto F = polyops::antiderivative(pieces[j]);
            total += polyops::eval(F, hi) - polyops::eval(F, lo);
        }
        return total;
    }
};

// (Mf)(xi) = int_{xi-1}^{xi} f, as a full piecewise polynomial.  Applied to
// the hill on [0, m] this yields the hill on [0, m+1].
inline PiecewisePoly mean_operator(const PiecewisePoly& f) {
    const std::size_t n = f.pieces.size();
    // cumulative exact antiderivative A_j valid on [knots[j], knots[j+1])
    std::vector<polyops::Coeffs> A(n);
    mpq_class cum = 0;
    for (std::size_t j = 0; j < n; ++j) {
        auto F = polyops::antiderivative(f.pieces[j]);
        const mpq_class base = polyops::eval(F, f.knots[j]);
        // A_j(t) = F(t) - F(knots[j]) + cum
        A[j] = F;
        if (A[j].empty()) A[j].push_back(cum - base);
        else A[j][0] += cum - base;
        polyops::trim(A[j]);
        cum = polyops::eval(A[j], f.knots[j + 1]);
    }
    const mpq_class total = cum;

    // on [knots[j], knots[j]+1): F(xi) - F(xi-1) with F the global cumulative
    PiecewisePoly r;
    r.knots.reserve(n + 2);
    for (std::size_t j = 0; j <= n; ++j) r.knots.push_back(f.knots[j]);
    r.knots.push_back(f.knots[n] + 1);
    r.pieces.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        polyops::Coeffs upper =
            j < n ? A[j] : polyops::Coeffs{total};
        polyops::Coeffs lower =
            j > 0 ? polyops::shift(A[j - 1], mpq_class(1)) : polyops::Coeffs{};
        r.pieces[j] = polyops::sub(upper, lower);
    }
    return r;
}

// exact windowed integral of a piecewise polynomial at one point
inline mpq_class mean_operator(const PiecewisePoly& f, const mpq_class& xi) {
    return f.integral(xi - 1, xi);
}

// generic integrable function: quadrature fallback
inline double mean_operator(const std::function<double(double)>& f, double xi) {
    QuadOptions opt;
    opt.rel_tol = 1e-10;
    return integrate(f, xi - 1.0, xi, opt).value;
}

// The k-th polynomial hill: k-fold unit-window convolution of the unit
// rectangle, supported on [0, k], piece degree k-1.
inline PiecewisePoly hill_build(int k) {
    if (k < 1) throw domain_error("hill_build: k must be >= 1");
    PiecewisePoly m;
    m.knots = {mpq_class(0), mpq_class(1)};
    m.pieces = {{mpq_class(1)}};
    for (int i = 2; i <= k; ++i) m = mean_operator(m);
    return m;
}

// D^ell of the k-th hill at xi, by the alternating-sum explicit description;
// right-continuous, zero outside [0, k).  ell >= k would be
// distribution-valued and is rejected.
inline double hill_eval(int k, int ell, double xi) {
    if (k < 1) throw domain_error("hill_eval: k must be >= 1");
    if (ell < 0 || ell >= k)
        throw domain_error("hill_eval: derivative order must satisfy 0 <= ell < k");
    if (xi < 0.0 || xi >= static_cast<double>(k)) return 0.0;
    const int n = k - 1 - ell;
    const int imax = std::min(static_cast<int>(std::floor(xi)), k);
    long double fact = 1.0L;
    for (int i = 2; i <= n; ++i) fact *= i;
    long double sum = 0.0L, binom = 1.0L;
    for (int i = 0; i <= imax; ++i) {
        long double pw = 1.0L;
        const long double base = static_cast<long double>(xi) - i;
        for (int j = 0; j < n; ++j) pw *= base;
        sum += (i % 2 == 0 ? 1.0L : -1.0L) * binom * pw;
        binom = binom * (k - i) / (i + 1);
    }
    return static_cast<double>(sum / fact);
}

} // namespace grained
