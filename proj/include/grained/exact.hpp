#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "primes.hpp"

namespace grained {

struct GrainParams {
    std::uint64_t B = 2;
    std::uint64_t C = 3;
    int k = 1;
    double alpha = 0.0; // derived: ln C / ln B - 1

    GrainParams(std::uint64_t B_, std::uint64_t C_, int k_) : B(B_), C(C_), k(k_) {
        if (B < 2) throw domain_error("GrainParams: B must be >= 2");
        if (C <= B) throw domain_error("GrainParams: C must exceed B");
        if (k < 0) throw domain_error("GrainParams: k must be >= 0");
        alpha = std::log(static_cast<double>(C)) / std::log(static_cast<double>(B)) - 1.0;
    }
};

struct CaseIndex {
    int j = -1; // -1: below B^k; k: at or above C^k; else x in [B^(k-j)C^j, B^(k-1-j)C^(j+1))
};

namespace detail {

inline mpz_class upow(std::uint64_t base, int e) {
    mpz_class b(static_cast<unsigned long>(base)), r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

// floor(x) of a nonnegative finite double, exactly
inline mpz_class floor_to_mpz(double x) {
    mpz_class r;
    mpz_set_d(r.get_mpz_t(), x); // truncates; exact for any finite double
    return r;
}

inline constexpr std::uint64_t node_budget = 1'000'000'000ull;

struct ExactCounter {
    const std::vector<std::uint64_t>& primes;
    std::uint64_t nodes = 0;
    std::vector<std::uint64_t> minpow; // minpow[m] = primes[0]^m, saturated

    explicit ExactCounter(const std::vector<std::uint64_t>& ps, int k) : primes(ps) {
        minpow.assign(static_cast<std::size_t>(k) + 1, 1);
        for (int m = 1; m <= k; ++m) {
            const unsigned __int128 v =
                static_cast<unsigned __int128>(minpow[m - 1]) * primes.front();
            minpow[m] = v > ~std::uint64_t{0} ? ~std::uint64_t{0} : static_cast<std::uint64_t>(v);
        }
    }

    void spend() {
        if (++nodes > node_budget)
            throw resource_error("exact count: enumeration node budget exceeded");
    }

    std::uint64_t below(std::uint64_t X) const {
        // primes <= X
        return static_cast<std::uint64_t>(
            std::upper_bound(primes.begin(), primes.end(), X) - primes.begin());
    }

    // ordered tuples: sum over p of count(m-1, X/p); nested floor division keeps
    // every quotient exact
    std::uint64_t kappa(int m, std::uint64_t X) {
        spend();
        if (X < minpow[m]) return 0;
        if (m == 1) return below(X);
        std::uint64_t total = 0;
        for (std::uint64_t p : primes) {
            const std::uint64_t Y = X / p;
            if (Y < minpow[m - 1]) break;
            total += kappa(m - 1, Y);
        }
        return total;
    }

    // non-decreasing tuples starting at prime index i0; distinct multisets give
    // distinct products, so this counts integers
    std::uint64_t pi(int m, std::uint64_t X, std::size_t i0) {
        spend();
        if (m == 1) {
            const std::uint64_t ub = below(X);
            return ub > i0 ? ub - i0 : 0;
        }
        std::uint64_t total = 0;
        for (std::size_t i = i0; i < primes.size(); ++i) {
            // need primes[i]^m <= X
            unsigned __int128 pw = 1;
            bool fits = true;
            for (int e = 0; e < m; ++e) {
                pw *= primes[i];
                if (pw > X) { fits = false; break; }
            }
            if (!fits) break;
            total += pi(m - 1, X / primes[i], i);
        }
        return total;
    }
};

} // namespace detail

// The unique j in {-1, 0, ..., k} whose case interval contains x; boundary
// comparisons are exact integer comparisons against B^(k-j) C^j.
inline CaseIndex classify_case(const GrainParams& pr, double x) {
    if (x < 0.0 || !std::isfinite(x)) throw domain_error("classify_case: x must be finite and >= 0");
    const mpz_class X = detail::floor_to_mpz(x);
    for (int j = pr.k; j >= 0; --j) {
        const mpz_class thr = detail::upow(pr.B, pr.k - j) * detail::upow(pr.C, j);
        if (X >= thr) return {j};
    }
    return {-1};
}

// Exact number of ordered k-tuples of primes in ]B, C] with product <= x.
inline std::uint64_t kappa_exact(const GrainParams& pr, double x) {
    if (x < 0.0 || !std::isfinite(x)) throw domain_error("kappa_exact: x must be finite and >= 0");
    if (pr.k == 0) return x >= 1.0 ? 1 : 0;
    if (x < 1.0) return 0;
    if (x >= 9.2233720368547758e18)
        throw resource_error("kappa_exact: x beyond 64-bit exact range");
    const auto X = static_cast<std::uint64_t>(x);
    const auto ps = primes_in(pr.B, pr.C);
    if (ps.empty()) return 0;
    detail::ExactCounter ctr(ps, pr.k);
    return ctr.kappa(pr.k, X);
}

// Exact count of integers <= x that are products of exactly k primes from
// ]B, C] (multiplicities allowed).
inline std::uint64_t pi_exact(const GrainParams& pr, double x) {
    if (x < 0.0 || !std::isfinite(x)) throw domain_error("pi_exact: x must be finite and >= 0");
    if (pr.k == 0) return x >= 1.0 ? 1 : 0;
    if (x < 1.0) return 0;
    if (x >= 9.2233720368547758e18)
        throw resource_error("pi_exact: x beyond 64-bit exact range");
    const auto X = static_cast<std::uint64_t>(x);
    const auto ps = primes_in(pr.B, pr.C);
    if (ps.empty()) return 0;
    detail::ExactCounter ctr(ps, pr.k);
    return ctr.pi(pr.k, X, 0);
}

} // namespace grained
