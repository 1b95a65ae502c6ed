#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rampss/access.hpp"
#include "rampss/analysis.hpp"
#include "rampss/gf.hpp"
#include "rampss/schemes.hpp"

// Turning a partially decryptable scheme into a strong one: re-encode the
// secrets through a public non-singular matrix T whose inverse has full-rank
// submatrices wherever a coalition's undetermined secret rows are involved.

namespace rampss::transform {

struct SpecViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct FieldTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotPD : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConditionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameters of an L x L matrix with entries 1/(x_i + y_j). Requires all
// sums nonzero and the x's and y's pairwise distinct, which makes every
// square submatrix non-singular.
struct HilbertSpec {
    std::vector<std::uint64_t> xs;
    std::vector<std::uint64_t> ys;
    std::uint64_t p = 2;
};

// Throws SpecViolation naming the offending pair.
void validate_spec(const HilbertSpec& spec);

gf::FieldMatrix hilbert_matrix(const HilbertSpec& spec);

// Closed-form determinant: prod_{i<j}(x_i-x_j)(y_i-y_j) / prod_{i,j}(x_i+y_j).
gf::FieldElement hilbert_det(const HilbertSpec& spec);

// Canonical spec xs = (1..L), ys = (0, L+1, .., 2L-1); when that violates the
// invariants mod p, the smallest valid pair of increasing tuples is chosen.
// FieldTooSmall when no valid spec exists.
HilbertSpec default_hilbert_spec(int L, std::uint64_t p);

// T = inverse of the canonical Hilbert matrix, so T^{-1} is superregular.
gf::FieldMatrix default_T(int L, std::uint64_t p);

struct SuperregularResult {
    bool ok = true;
    std::vector<std::size_t> rows;  // failing submatrix, 0-based, empty when ok
    std::vector<std::size_t> cols;
};

// Every square submatrix non-singular. Deterministic first failure: smallest
// size, then lexicographic rows, then columns. Parallel and serial versions
// report identically.
SuperregularResult superregular_check(const gf::FieldMatrix& m);
SuperregularResult superregular_check_serial(const gf::FieldMatrix& m);

struct Eq22Violation {
    access::Subset subset;
    analysis::SecretSet secret_cols;  // the column set whose submatrix dropped rank
};

struct Eq22Result {
    bool ok = true;
    std::optional<Eq22Violation> violation;
};

// Necessary and sufficient condition on T: for every coalition A at level
// l < L, the submatrix of T^{-1} on rows {1..L} minus the decrypted index
// set and any L-l columns has rank L-l. The decrypted index sets come from
// the classification's PD witnesses; strict mode checks every witness
// instead of the recorded first one. Throws NotPD when the scheme is not
// partially decryptable for the structure.
Eq22Result eq22_check(const gf::FieldMatrix& t, const schemes::LinearScheme& s,
                      const access::AccessStructure& structure, bool strict = false);

// New scheme encoding (S' || R) as ((S' T) || R): generator becomes
// blockdiag(T, I_m) * G. Layout, modulus and coding rates are unchanged.
schemes::LinearScheme apply_T(const schemes::LinearScheme& s, const gf::FieldMatrix& t);

struct StrengthenResult {
    schemes::LinearScheme scheme;
    gf::FieldMatrix T;
    analysis::ClassificationReport report;  // of the transformed scheme
};

// End to end: verify PD, pick T (default_T unless supplied), check the rank
// condition, apply, re-classify; returns only with a strong verdict.
// Throws NotPD / FieldTooSmall / ConditionFailed.
StrengthenResult strengthen(const schemes::LinearScheme& s,
                            const access::AccessStructure& structure,
                            const std::optional<gf::FieldMatrix>& supplied_T = {},
                            bool strict_witnesses = false);

}  // namespace rampss::transform
