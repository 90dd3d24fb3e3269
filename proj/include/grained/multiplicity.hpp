#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "errors.hpp"

namespace grained {

// ordered set partition of {1, ..., k} grouping positions by value, blocks
// ordered by increasing value; positions are 1-based and sorted within blocks
using Sorting = std::vector<std::vector<int>>;

// block sizes of a sorting, in block order
using TypeVector = std::vector<int>;

template <class T>
inline Sorting sorting_of(const std::vector<T>& values) {
    if (values.empty()) throw domain_error("sorting_of: empty tuple");
    std::map<T, std::vector<int>> groups;
    for (std::size_t i = 0; i < values.size(); ++i)
        groups[values[i]].push_back(static_cast<int>(i) + 1);
    Sorting s;
    s.reserve(groups.size());
    for (auto& [v, block] : groups) s.push_back(std::move(block));
    return s;
}

inline TypeVector type_of(const Sorting& s) {
    TypeVector t;
    t.reserve(s.size());
    for (const auto& block : s) {
        if (block.empty()) throw domain_error("type_of: empty block");
        t.push_back(static_cast<int>(block.size()));
    }
    return t;
}

// number of k-tuples with a given sorting type: the multinomial k! / prod T_i!
inline mpz_class sortings_count(const TypeVector& type) {
    if (type.empty()) throw domain_error("sortings_count: empty type");
    int k = 0;
    for (int t : type) {
        if (t < 1) throw domain_error("sortings_count: block sizes must be >= 1");
        k += t;
    }
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
    for (int t : type) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(t));
        r /= f;
    }
    return r;
}

// number of ordered set partitions of a k-set (Fubini numbers):
// s(k) = sum_j C(k,j) s(k-j), s(0) = 1
inline mpz_class ordered_bell(int k) {
    if (k < 0) throw domain_error("ordered_bell: k must be >= 0");
    std::vector<mpz_class> s(static_cast<std::size_t>(k) + 1);
    s[0] = 1;
    for (int n = 1; n <= k; ++n) {
        mpz_class acc = 0;
        for (int j = 1; j <= n; ++j) {
            mpz_class b;
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
                         static_cast<unsigned long>(j));
            acc += b * s[static_cast<std::size_t>(n - j)];
        }
        s[static_cast<std::size_t>(n)] = acc;
    }
    return s[static_cast<std::size_t>(k)];
}

// canonical non-decreasing tuple with the given type: 1 repeated T_1 times,
// then 2 repeated T_2 times, and so on; its sorting has consecutive blocks
inline Sorting increasing_representative(const TypeVector& type) {
    if (type.empty()) throw domain_error("increasing_representative: empty type");
    Sorting s;
    s.reserve(type.size());
    int pos = 1;
    for (int t : type) {
        if (t < 1) throw domain_error("increasing_representative: block sizes must be >= 1");
        std::vector<int> block(static_cast<std::size_t>(t));
        for (int& q : block) q = pos++;
        s.push_back(std::move(block));
    }
    return s;
}

// bound on |pi - kappa/k!| from tuples with a repeated coordinate: a tuple
// whose sorting is not the all-singleton one has some prime squared dividing
// the product, and each such product <= x contributes at most 2^(k-1) ordered
// tuples while kappa/k! undercounts it by less than its sortings share
struct NonsquarefreeBound {
    double tight = 0.0;  // (2^(k-1) - s(k)/k!) x / B
    double simple = 0.0; // 2^(k-1) x / B
};

inline NonsquarefreeBound nonsquarefree_bound(int k, double x, double B) {
    if (k < 2) throw domain_error("nonsquarefree_bound: k must be >= 2");
    if (!(B > 1.0) || !(x >= 0.0)) throw domain_error("nonsquarefree_bound: need B > 1, x >= 0");
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
    const double ratio = ordered_bell(k).get_d() / fact.get_d();
    const double lead = std::ldexp(1.0, k - 1);
    NonsquarefreeBound b;
    b.simple = lead * x / B;
    b.tight = (lead - ratio) * x / B;
    return b;
}

} // namespace grained
