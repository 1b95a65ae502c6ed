#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rampss/access.hpp"
#include "rampss/gf.hpp"

// Linear secret sharing schemes given by a generator matrix G of shape
// (L+m) x total-symbols: share symbols are (S || R) * G with S the L secret
// symbols and R the m uniform random symbols, all over GF(p).

namespace rampss::schemes {

struct BadParameters : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct LinearScheme {
    std::uint64_t p = 2;
    int L = 1;  // secret symbols
    int m = 0;  // random symbols
    int n = 1;  // participants
    std::vector<int> symbol_owner;           // column -> participant (0-based)
    std::vector<std::string> participant_names;  // defaults V1..Vn
    gf::FieldMatrix G{1, 0, 2};

    int total_symbols() const { return static_cast<int>(G.cols()); }
    access::Subset full_set() const { return (access::Subset{1} << n) - 1; }

    // Ascending column indices owned by the coalition.
    std::vector<int> columns_of(access::Subset a) const;
    int symbols_of(int participant) const;
    // G restricted to the coalition's columns, in ascending column order.
    gf::FieldMatrix columns(access::Subset a) const;
    // Display name for one symbol: "V3" or "V3.2" for multi-symbol owners.
    std::string symbol_name(int column) const;

    // Ownership layout, p, L, m and G; participant names are not compared.
    friend bool operator==(const LinearScheme& a, const LinearScheme& b) {
        return a.p == b.p && a.L == b.L && a.m == b.m && a.n == b.n &&
               a.symbol_owner == b.symbol_owner && a.G == b.G;
    }
};

// Throws BadParameters when the fields are inconsistent.
void validate_scheme(const LinearScheme& s);

struct ShareBundle {
    access::Subset participants = 0;
    // One value per owned symbol, aligned with columns_of(participants).
    std::vector<std::uint64_t> values;
};

// Shares for all n participants; inputs are reduced residues.
ShareBundle encode(const LinearScheme& s, std::span<const std::uint64_t> secrets,
                   std::span<const std::uint64_t> randoms);

// Keep only the shares owned by the sub-coalition.
ShareBundle restrict_bundle(const LinearScheme& s, const ShareBundle& b,
                            access::Subset coalition);

struct ReconstructResult {
    // Set iff every secret symbol is determined by the bundle.
    std::optional<std::vector<std::uint64_t>> secrets;
    // Monic row basis of the secret functionals c with c*S determined by the
    // coalition's shares (rows x L). Full recovery iff rank == L.
    gf::FieldMatrix recoverable{0, 0, 2};
};

ReconstructResult reconstruct(const LinearScheme& s, const ShareBundle& b);

// Rows form the canonical basis of {c in GF(p)^L : c*S is a linear function
// of the coalition's share symbols}.
gf::FieldMatrix recoverable_secret_basis(const LinearScheme& s, access::Subset coalition);

// Additive multiple-assignment scheme (L = 1) for a monotone family given by
// its minimal sets: each minimal set {i_1 < ... < i_t} is split as
// r_1, ..., r_{t-1}, S - sum(r_j) across its members, with fresh randoms per set.
LinearScheme isn_perfect(const std::vector<access::Subset>& family_minimal, int n,
                         std::uint64_t p);

// One perfect scheme per cumulative family, stacked; participant i owns its
// share from every level. A level-l coalition decrypts exactly S_1..S_l.
LinearScheme pd_concat(const access::AccessStructure& s, std::uint64_t p);

// f(x) = sum S_l x^(l-1) + sum R_j x^(L+j-1) with m = k-L randoms; share i is
// f(points[i]). Points default to 1..n, must be distinct and nonzero.
LinearScheme shamir_ramp(int k, int L, int n, std::uint64_t p,
                         std::vector<std::uint64_t> points = {});

struct Fixture {
    LinearScheme scheme;
    access::AccessStructure structure;
};

// Built-in schemes: "example1" (4 participants, 2 symbols each, L=2, m=4),
// "remark3" ((3,2,3) threshold: S1+R, S1+S2+R, R), "remark1"
// (shamir_ramp(4,2,15,17)). p = 0 picks the default (3, 3 and 17); remark1
// is pinned to p = 17.
Fixture builtin_fixture(std::string_view name, std::uint64_t p = 0);

}  // namespace rampss::schemes
