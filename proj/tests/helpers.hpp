#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "rampss/access.hpp"
#include "rampss/schemes.hpp"

// Deterministic generators shared across the test binaries.

namespace rampss::testing {

inline access::Subset random_nonempty_subset(std::mt19937_64& rng, int n) {
    access::Subset full = (access::Subset{1} << n) - 1;
    access::Subset a = static_cast<access::Subset>(rng()) & full;
    if (a == 0) a = access::Subset{1} << (rng() % n);
    return a;
}

// Valid random structure: draw the top cumulative family, then enlarge it
// level by level, so nesting holds by construction.
inline access::AccessStructure random_structure(std::mt19937_64& rng, int n, int L) {
    access::AccessStructure s;
    s.n = n;
    s.L = L;
    s.cumulative_minimal.resize(L);
    std::vector<access::Subset> sets;
    for (std::size_t i = 0; i < 1 + rng() % 2; ++i)
        sets.push_back(random_nonempty_subset(rng, n));
    s.cumulative_minimal[L - 1] = access::minimalize(sets);
    for (int l = L - 1; l >= 1; --l) {
        sets = s.cumulative_minimal[l];
        for (std::size_t i = 0; i < 1 + rng() % 2; ++i)
            sets.push_back(random_nonempty_subset(rng, n));
        s.cumulative_minimal[l - 1] = access::minimalize(sets);
    }
    access::require_valid(s);
    return s;
}

// A structure breaking the nesting requirement: some top-level minimal set
// has no lower-level subset below it.
inline access::AccessStructure random_nonmonotone_structure(std::mt19937_64& rng, int n,
                                                            int L) {
    access::AccessStructure s;
    s.n = n;
    s.L = std::max(L, 2);
    s.cumulative_minimal.resize(s.L);
    access::Subset big = 0;
    while (access::popcount(big) < 2) big = random_nonempty_subset(rng, n);
    auto idx = access::members(big);
    access::Subset small = big & ~(access::Subset{1} << idx[rng() % idx.size()]);
    for (int l = 0; l < s.L - 1; ++l) s.cumulative_minimal[l] = {big};
    s.cumulative_minimal[s.L - 1] = {small};
    return s;
}

// Arbitrary linear scheme with a random generator matrix and random symbol
// ownership; not tied to any access structure.
inline schemes::LinearScheme random_scheme(std::mt19937_64& rng, int n, int L, int m,
                                           int cols, std::uint64_t p) {
    schemes::LinearScheme s;
    s.p = p;
    s.L = L;
    s.m = m;
    s.n = n;
    s.G = gf::FieldMatrix(L + m, cols, p);
    for (int r = 0; r < L + m; ++r)
        for (int c = 0; c < cols; ++c)
            s.G.set(r, c, static_cast<std::int64_t>(rng() % p));
    s.symbol_owner.resize(cols);
    for (int c = 0; c < cols; ++c) s.symbol_owner[c] = static_cast<int>(rng() % n);
    s.participant_names.resize(n);
    for (int i = 0; i < n; ++i) s.participant_names[i] = "V" + std::to_string(i + 1);
    schemes::validate_scheme(s);
    return s;
}

inline gf::FieldMatrix random_invertible(std::mt19937_64& rng, int dim,
                                         std::uint64_t p) {
    while (true) {
        gf::FieldMatrix t(dim, dim, p);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                t.set(r, c, static_cast<std::int64_t>(rng() % p));
        if (!t.det().is_zero()) return t;
    }
}

// Normalize minimal-set lists for structure comparisons.
inline access::AccessStructure sorted_structure(access::AccessStructure s) {
    for (auto& level : s.cumulative_minimal) std::sort(level.begin(), level.end());
    return s;
}

}  // namespace rampss::testing
