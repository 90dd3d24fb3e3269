#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "quad.hpp"

namespace grained {

enum class ErrorBoundMode { riemann, dusart };

// Validity floors: the riemann-conditional bound sqrt(x) ln x / (8 pi) holds
// for x >= 2657, the unconditional Dusart bound 2.3854 x / ln^3 x for
// x > 355 991.
inline constexpr double riemann_floor = 2657.0;
inline constexpr double dusart_floor = 355991.0;

struct PrimeTable {
    std::uint64_t segment_lo = 2;
    std::uint64_t segment_hi = 1;
    std::vector<std::uint8_t> primality; // bit i: segment_lo + i is prime

    bool is_prime(std::uint64_t n) const {
        return n >= segment_lo && n <= segment_hi && primality[n - segment_lo] != 0;
    }
};

namespace detail {

inline constexpr std::uint64_t sieve_segment = std::uint64_t{1} << 20;
inline constexpr std::uint64_t sieve_span_cap = std::uint64_t{1} << 31;
inline constexpr std::uint64_t sieve_hi_cap = std::uint64_t{1} << 43;

inline std::vector<std::uint32_t> base_primes(std::uint64_t limit) {
    // simple sieve up to limit (= sqrt of the segmented range)
    std::vector<std::uint8_t> comp(limit + 1, 0);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (comp[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = 1;
    }
    return out;
}

// Visit primes of [lo, hi] in ascending order, one cache-sized segment at a
// time; fn(p) is called for each prime p.
template <class Fn>
void for_primes(std::uint64_t lo, std::uint64_t hi, Fn&& fn) {
    if (hi < 2 || hi < lo) return;
    lo = std::max<std::uint64_t>(lo, 2);
    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
    const auto base = base_primes(root);
    std::vector<std::uint8_t> seg;
    for (std::uint64_t s = lo; s <= hi; s += sieve_segment) {
        const std::uint64_t e = std::min(hi, s + sieve_segment - 1);
        seg.assign(e - s + 1, 1);
        for (std::uint32_t p : base) {
            const std::uint64_t p2 = std::uint64_t{p} * p;
            if (p2 > e) break;
            std::uint64_t start = std::max(p2, ((s + p - 1) / p) * p);
            for (std::uint64_t j = start; j <= e; j += p) seg[j - s] = 0;
        }
        if (s <= 1) seg[1 - s] = 0;
        if (s == 0) seg[0] = 0;
        for (std::uint64_t i = 0; i < seg.size(); ++i)
            if (seg[i]) fn(s + i);
    }
}

} // namespace detail

inline PrimeTable sieve_range(std::uint64_t lo, std::uint64_t hi) {
    if (lo < 2 || lo > hi) throw domain_error("sieve_range: need 2 <= lo <= hi");
    if (hi - lo + 1 > detail::sieve_span_cap || hi > detail::sieve_hi_cap)
        throw resource_error("sieve_range: range exceeds sieve budget");
    PrimeTable t;
    t.segment_lo = lo;
    t.segment_hi = hi;
    t.primality.assign(hi - lo + 1, 0);
    detail::for_primes(lo, hi, [&](std::uint64_t p) { t.primality[p - lo] = 1; });
    return t;
}

inline std::uint64_t prime_count(double x) {
    if (x < 2.0) return 0;
    const auto n = static_cast<std::uint64_t>(x);
    if (n > detail::sieve_hi_cap) throw resource_error("prime_count: x exceeds sieve budget");
    std::uint64_t c = 0;
    detail::for_primes(2, n, [&](std::uint64_t) { ++c; });
    return c;
}

// Primes in the half-open range ]B, C], ascending.
inline std::vector<std::uint64_t> primes_in(std::uint64_t B, std::uint64_t C) {
    std::vector<std::uint64_t> out;
    if (C <= B) return out;
    if (C - B > detail::sieve_span_cap || C > detail::sieve_hi_cap)
        throw resource_error("primes_in: range exceeds sieve budget");
    detail::for_primes(B + 1, C, [&](std::uint64_t p) { out.push_back(p); });
    return out;
}

namespace detail {

inline constexpr double euler_gamma = 0.57721566490153286061;

// Ei(z) by power series: gamma + ln|z| + sum z^j/(j j!).  Good for |z| < ~45.
inline double ei_series(double z) {
    long double sum = euler_gamma + std::log(std::abs(z));
    long double term = 1.0L;
    for (int j = 1; j <= 400; ++j) {
        term *= z / j;
        const long double add = term / j;
        sum += add;
        if (std::abs(add) < 1e-18L * std::abs(sum) && j > 3) break;
    }
    return static_cast<double>(sum);
}

// Ei(z) by the divergent asymptotic series (e^z/z) sum j!/z^j, truncated at
// the smallest term; relative truncation error ~e^{-z}, below 1e-12 for z >= 45.
inline double ei_asymptotic(double z) {
    long double s = 1.0L, t = 1.0L;
    for (int j = 1; j < 500; ++j) {
        const long double nt = t * j / z;
        if (nt >= t) break;
        t = nt;
        s += t;
        if (t < 1e-20L * s) break;
    }
    return static_cast<double>(std::exp(static_cast<long double>(z)) / z * s);
}

inline double ei(double z) { return z >= 45.0 ? ei_asymptotic(z) : ei_series(z); }

} // namespace detail

// Principal-value logarithmic integral li(x) = PV int_0^x dt/ln t = Ei(ln x),
// relative accuracy 1e-12.
inline double log_integral(double x) {
    if (x < 0.0) throw domain_error("log_integral: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (x == 1.0) throw domain_error("log_integral: logarithmic singularity at x = 1");
    return detail::ei(std::log(x));
}

// Independent evaluation path: li(2) from the Ei series once, plus adaptive
// quadrature of 1/ln t from 2 to x.  Cross-check only; x >= 1.5.
inline double log_integral_quad(double x) {
    if (x < 1.5) throw domain_error("log_integral_quad: x must be >= 1.5");
    static const double li2 = detail::ei_series(std::log(2.0));
    if (x == 2.0) return li2;
    QuadOptions opt;
    opt.rel_tol = 1e-13;
    opt.max_depth = 40;
    const auto f = [](double t) { return 1.0 / std::log(t); };
    if (x > 2.0) return li2 + integrate(f, 2.0, x, opt).value;
    return li2 - integrate(f, x, 2.0, opt).value;
}

inline double pnt_error_bound(double x, ErrorBoundMode mode) {
    if (mode == ErrorBoundMode::riemann) {
        if (x < riemann_floor)
            throw domain_error("pnt_error_bound: riemann bound needs x >= 2657");
        return std::sqrt(x) * std::log(x) / (8.0 * M_PI);
    }
    if (!(x > dusart_floor))
        throw domain_error("pnt_error_bound: dusart bound needs x > 355991");
    const double l = std::log(x);
    return 2.3854 * x / (l * l * l);
}

// d/dx of the riemann-mode bound: (ln x + 2) / (16 pi sqrt x).
inline double pnt_error_bound_derivative(double x, ErrorBoundMode mode) {
    if (mode != ErrorBoundMode::riemann)
        throw domain_error("pnt_error_bound_derivative: only the riemann bound is differentiated");
    if (x < riemann_floor)
        throw domain_error("pnt_error_bound_derivative: riemann bound needs x >= 2657");
    return (std::log(x) + 2.0) / (16.0 * M_PI * std::sqrt(x));
}

struct PntCheckpoint {
    double x = 0;
    std::uint64_t pi = 0;
    double li = 0;
    double bound = 0;
    double margin = 0; // bound - |pi - li|; positive means pass
};

struct PntReport {
    std::vector<PntCheckpoint> lines; // the emitted grid checkpoints
    double max_abs_dev = 0.0;         // max |pi - li| over every checkpoint
    std::uint64_t checked = 0;        // total checkpoints examined
    bool all_pass = true;
};

// Sweep [2, x_max] checking |pi(x) - li(x)| < Ehat(x).  Every prime above the
// mode floor is checked (count both before and after the jump at p); the
// emitted lines cover the floor(2^(j/8)) grid, which contains every power of
// two.  x_max below the mode floor is a domain error.
inline PntReport verify_pnt(std::uint64_t x_max, ErrorBoundMode mode) {
    const double floor_x = mode == ErrorBoundMode::riemann ? riemann_floor : dusart_floor + 1;
    if (static_cast<double>(x_max) < floor_x)
        throw domain_error("verify_pnt: x_max below the mode validity floor");
    if (x_max > detail::sieve_hi_cap)
        throw resource_error("verify_pnt: x_max exceeds sieve budget");

    std::vector<std::uint64_t> grid;
    for (int j = 0;; ++j) {
        const double g = std::floor(std::pow(2.0, j / 8.0));
        if (g > static_cast<double>(x_max)) break;
        const auto gi = static_cast<std::uint64_t>(g);
        if ((grid.empty() || gi != grid.back()) && static_cast<double>(gi) >= floor_x)
            grid.push_back(gi);
    }
    if (grid.empty() || grid.back() != x_max) grid.push_back(x_max);

    PntReport rep;
    std::uint64_t count = 0;
    std::size_t gi = 0;
    const auto check = [&](double x, std::uint64_t pi_x, bool emit) {
        const double li = log_integral(x);
        const double bound = pnt_error_bound(x, mode);
        const double dev = std::abs(static_cast<double>(pi_x) - li);
        rep.max_abs_dev = std::max(rep.max_abs_dev, dev);
        rep.checked += 1;
        if (dev >= bound) rep.all_pass = false;
        if (emit)
            rep.lines.push_back({x, pi_x, li, bound, bound - dev});
    };
    detail::for_primes(2, x_max, [&](std::uint64_t p) {
        while (gi < grid.size() && grid[gi] < p) {
            check(static_cast<double>(grid[gi]), count, true);
            ++gi;
        }
        ++count;
        if (static_cast<double>(p) >= floor_x) {
            check(static_cast<double>(p), count - 1, false); // sup approached from below
            check(static_cast<double>(p), count, false);
        }
    });
    while (gi < grid.size()) {
        check(static_cast<double>(grid[gi]), count, true);
        ++gi;
    }
    return rep;
}

inline std::string to_string(ErrorBoundMode m) {
    return m == ErrorBoundMode::riemann ? "riemann" : "dusart";
}

} // namespace grained
