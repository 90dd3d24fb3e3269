#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace grained {

// dense coefficients, ascending degree; normalized: no trailing zeros, so the
// zero polynomial is the empty sequence and degree() is -1 for it
struct RationalPoly {
    std::vector<mpq_class> c;

    RationalPoly() = default;
    RationalPoly(std::initializer_list<mpq_class> init) : c(init) { trim(); }
    explicit RationalPoly(std::vector<mpq_class> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    mpq_class coeff(int i) const {
        return i >= 0 && i < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(i)]
                                                        : mpq_class(0);
    }
    mpq_class eval(const mpq_class& t) const {
        mpq_class r = 0;
        for (std::size_t i = c.size(); i-- > 0;) r = r * t + c[i];
        return r;
    }
};

inline RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
    std::vector<mpq_class> r(std::max(a.c.size(), b.c.size()), mpq_class(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return RationalPoly(std::move(r));
}

inline RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
    std::vector<mpq_class> r(std::max(a.c.size(), b.c.size()), mpq_class(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
    return RationalPoly(std::move(r));
}

inline RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.zero() || b.zero()) return {};
    std::vector<mpq_class> r(a.c.size() + b.c.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return RationalPoly(std::move(r));
}

inline RationalPoly operator*(const mpq_class& s, const RationalPoly& a) {
    std::vector<mpq_class> r = a.c;
    for (auto& v : r) v *= s;
    return RationalPoly(std::move(r));
}

// multiply by T^e
inline RationalPoly shift_up(const RationalPoly& a, int e) {
    if (a.zero() || e == 0) return a;
    std::vector<mpq_class> r(a.c.size() + static_cast<std::size_t>(e), mpq_class(0));
    std::copy(a.c.begin(), a.c.end(), r.begin() + e);
    return RationalPoly(std::move(r));
}

// exact quotient by (1 - T); the endpoint must actually be a root
inline RationalPoly divide_out_one_minus_T(const RationalPoly& p) {
    if (p.zero() || p.eval(1) != 0)
        throw domain_error("divide_out_one_minus_T: 1 is not a root");
    // synthetic division by (T - 1), then negate the quotient
    std::vector<mpq_class> q(p.c.size() - 1);
    mpq_class carry = 0;
    for (std::size_t i = p.c.size(); i-- > 1;) {
        carry += p.c[i];
        q[i - 1] = -carry;
    }
    return RationalPoly(std::move(q));
}

// coefficient polynomials in T of ascending powers of tau
using BivarPoly = std::vector<RationalPoly>;

namespace detail {

inline mpz_class fact_z(int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// (1 - (1-T)^k) / T; the numerator has zero constant term, so the quotient is
// the coefficient sequence shifted down by one
inline RationalPoly q_poly(int k) {
    RationalPoly one_minus_T{mpq_class(1), mpq_class(-1)}, pw{mpq_class(1)};
    for (int j = 0; j < k; ++j) pw = pw * one_minus_T;
    const RationalPoly u = RationalPoly{mpq_class(1)} - pw;
    return RationalPoly(std::vector<mpq_class>(u.c.begin() + 1, u.c.end()));
}

} // namespace detail

// F_k(tau, T) = sum_{0<=l<=k-2} tau^l / l!  -  q_k(T) (1 - tau^(k-1) T / (k-1)!)
// with q_k(T) = (1 - (1-T)^k) / T cancelled symbolically
inline BivarPoly build_F(int k) {
    if (k < 2) throw domain_error("build_F: k must be >= 2");
    const RationalPoly q = detail::q_poly(k);
    BivarPoly F(static_cast<std::size_t>(k));
    F[0] = RationalPoly{mpq_class(1)} - q;
    for (int l = 1; l <= k - 2; ++l)
        F[static_cast<std::size_t>(l)] = RationalPoly{mpq_class(mpz_class(1), detail::fact_z(l))};
    F[static_cast<std::size_t>(k - 1)] =
        mpq_class(mpz_class(1), detail::fact_z(k - 1)) * shift_up(q, 1);
    return F;
}

// g_{k,s}(T) = F_k(L_s(T), T) with L_s(T) = sum_{1<=l<=s} (1-T)^l / l
inline RationalPoly build_g(int k, int s) {
    if (k < 2) throw domain_error("build_g: k must be >= 2");
    if (s < 1) throw domain_error("build_g: s must be >= 1");
    const BivarPoly F = build_F(k);
    RationalPoly one_minus_T{mpq_class(1), mpq_class(-1)}, pw{mpq_class(1)}, L;
    for (int l = 1; l <= s; ++l) {
        pw = pw * one_minus_T;
        L = L + mpq_class(1, static_cast<unsigned long>(l)) * pw;
    }
    RationalPoly g = F.back();
    for (std::size_t i = F.size() - 1; i-- > 0;) g = g * L + F[i];
    return g;
}

namespace detail {

using IntPoly = std::vector<mpz_class>; // ascending, trailing zeros trimmed

inline void trimz(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline void make_primitive(IntPoly& p) {
    mpz_class g = 0;
    for (const auto& v : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g > 1)
        for (auto& v : p) v /= g;
}

inline IntPoly primitive_int(const RationalPoly& p) {
    mpz_class L = 1;
    for (const auto& q : p.c) {
        const mpz_class d = q.get_den();
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), d.get_mpz_t());
    }
    IntPoly r(p.c.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = p.c[i].get_num() * (L / p.c[i].get_den());
    trimz(r);
    make_primitive(r);
    return r;
}

inline IntPoly derivative_int(const IntPoly& p) {
    if (p.size() <= 1) return {};
    IntPoly r(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = static_cast<long>(i) * p[i];
    return r;
}

// pseudo-remainder of A by B with the canonical multiplier lc(B)^(degA-degB+1)
inline IntPoly prem(IntPoly A, const IntPoly& B) {
    const mpz_class lb = B.back();
    int e = static_cast<int>(A.size()) - static_cast<int>(B.size()) + 1;
    while (!A.empty() && A.size() >= B.size()) {
        const mpz_class la = A.back();
        const std::size_t shift = A.size() - B.size();
        for (std::size_t i = 0; i + 1 < A.size(); ++i) A[i] *= lb;
        for (std::size_t i = 0; i + 1 < B.size(); ++i) A[i + shift] -= la * B[i];
        A.pop_back(); // leading terms cancel exactly
        trimz(A);
        --e;
    }
    if (!A.empty() && e > 0) {
        mpz_class f;
        mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
        for (auto& v : A) v *= f;
    }
    return A;
}

inline int sign_at(const IntPoly& p, const mpq_class& t) {
    mpq_class r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * t + mpq_class(p[i]);
    return sgn(r);
}

} // namespace detail

// number of distinct real roots of p in ]a, b[ by the sign-variation
// difference of the canonical Sturm chain; primitive pseudo-remainders keep
// the integer coefficients small, with the sign of each step fixed up to
// match -remainder up to a positive factor
inline int sturm_root_count(const RationalPoly& p, const mpq_class& a, const mpq_class& b) {
    if (p.zero()) throw domain_error("sturm_root_count: zero polynomial");
    if (!(a < b)) throw domain_error("sturm_root_count: need a < b");
    if (p.eval(a) == 0 || p.eval(b) == 0)
        throw domain_error("sturm_root_count: endpoint is a root");
    detail::IntPoly p0 = detail::primitive_int(p);
    if (p0.size() <= 1) return 0;
    detail::IntPoly p1 = detail::derivative_int(p0);
    detail::make_primitive(p1);
    std::vector<detail::IntPoly> chain{std::move(p0), std::move(p1)};
    while (!chain.back().empty()) {
        const detail::IntPoly& A = chain[chain.size() - 2];
        const detail::IntPoly& B = chain.back();
        const int d = static_cast<int>(A.size()) - static_cast<int>(B.size()) + 1;
        detail::IntPoly R = detail::prem(A, B);
        if (R.empty()) break;
        const bool negative_multiplier = B.back() < 0 && d % 2 != 0;
        detail::make_primitive(R);
        if (!negative_multiplier)
            for (auto& v : R) v = -v;
        chain.push_back(std::move(R));
    }
    const auto variations = [&chain](const mpq_class& t) {
        int v = 0, prev = 0;
        for (const auto& q : chain) {
            const int s = detail::sign_at(q, t);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    };
    return variations(a) - variations(b);
}

// g_{k,s}(0) > 0 and g_{k,s} has no zero in ]0, 1[; the (1-T)^k factor at the
// right endpoint is divided out before the root count (for s < k - 1 the
// actual multiplicity of the root at 1 can be smaller, so exactly that
// multiplicity is removed, which leaves the open-interval count unchanged)
inline bool verify_positivity(int k, int s) {
    if (k < 3) throw domain_error("verify_positivity: k must be >= 3");
    if (s < 1) throw domain_error("verify_positivity: s must be >= 1");
    const RationalPoly g = build_g(k, s);
    if (!(g.eval(0) > 0)) return false;
    RationalPoly h = g;
    while (!h.zero() && h.eval(1) == 0) h = divide_out_one_minus_T(h);
    return sturm_root_count(h, 0, 1) == 0;
}

// smallest s making verify_positivity(k, s) true, by ascending scan
inline int min_s(int k) {
    if (k < 3 || k > 9) throw domain_error("min_s: supported range is 3 <= k <= 9");
    for (int s = 1; s <= 12; ++s)
        if (verify_positivity(k, s)) return s;
    throw resource_error("min_s: no admissible s up to the scan cap 12");
}

} // namespace grained
