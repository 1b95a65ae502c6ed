#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rampss/access.hpp"
#include "rampss/gf.hpp"
#include "rampss/schemes.hpp"

// Exact security analysis of linear schemes. All entropies are measured in
// symbols (units of log p), so rank arithmetic gives them as integers; the
// brute-force oracle tabulates the joint distribution instead and reports an
// exact rational, assuming nothing about linearity.

namespace rampss::analysis {

// Bitmask over secret indices; secret l (1-based) is bit l-1.
using SecretSet = std::uint32_t;

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact fraction with normalized sign and gcd-reduced terms.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }
    std::string str() const;  // "1/2", "3"
};

// All masks over {0,..,universe-1} with the given popcount, ascending.
std::vector<std::uint32_t> masks_of_size(int universe, int size);

// H(S_J | V_A) in symbols: rank([E_J | G_A]) - rank(G_A).
int cond_entropy(const schemes::LinearScheme& s, SecretSet j, access::Subset a);

// One leaked secret functional: secret_coeffs * S equals
// share_coeffs * (A's share symbols) for every input.
struct LeakFunctional {
    std::vector<std::uint64_t> secret_coeffs;  // length L, monic canonical rows
    std::vector<std::uint64_t> share_coeffs;   // length = symbols owned by A
    friend bool operator==(const LeakFunctional&, const LeakFunctional&) = default;
};

// Canonical basis of the secret functionals determined by the coalition.
std::vector<LeakFunctional> decryptable_subspace(const schemes::LinearScheme& s,
                                                 access::Subset a);

// Brute-force conditional entropy by enumerating all p^(L+m) inputs and
// tabulating the joint distribution of (S_J, V_A). Guarded by
// p^(L+m) <= 10^7 (TooLarge). Independent of the rank machinery above.
Rational brute_entropy(const schemes::LinearScheme& s, SecretSet j, access::Subset a);
Rational brute_entropy_serial(const schemes::LinearScheme& s, SecretSet j,
                              access::Subset a);

struct RampViolation {
    access::Subset subset;
    int level;
    int expected;  // L - level
    int got;       // H(S|A)
    friend bool operator==(const RampViolation&, const RampViolation&) = default;
};

struct StrongViolation {
    access::Subset subset;
    SecretSet secret_set;  // the J' of size L - level that leaks
    int expected;
    int got;
    friend bool operator==(const StrongViolation&, const StrongViolation&) = default;
};

struct SubsetLeak {
    access::Subset subset;
    std::vector<LeakFunctional> basis;
    friend bool operator==(const SubsetLeak&, const SubsetLeak&) = default;
};

inline constexpr SecretSet kNoWitness = ~SecretSet{0};

struct ClassificationReport {
    int n = 0;
    int L = 0;
    std::uint64_t p = 2;

    bool ramp_valid = false;
    std::vector<RampViolation> ramp_violations;

    // Partially decryptable: every level-l coalition pins down exactly some
    // l secret symbols and nothing about the rest. pd_witness[A] holds the
    // lexicographically first such index set, kNoWitness where none exists.
    bool pd = false;
    std::vector<access::Subset> pd_failures;
    std::vector<SecretSet> pd_witness;

    // Strong: no coalition below the top level determines any size-(L-l)
    // sub-collection of secrets below full entropy.
    bool strong = false;
    std::vector<StrongViolation> strong_violations;

    // For each strong-violating coalition, the functionals it determines.
    std::vector<SubsetLeak> leaks;

    std::vector<Rational> coding_rates;  // H(V_i) / H(S), per participant

    friend bool operator==(const ClassificationReport&,
                           const ClassificationReport&) = default;
};

// Exhaustive classification over all 2^n coalitions. The parallel version
// produces a report identical to the serial one (deterministic merge in
// subset order).
ClassificationReport classify(const schemes::LinearScheme& s,
                              const access::AccessStructure& structure);
ClassificationReport classify_serial(const schemes::LinearScheme& s,
                                     const access::AccessStructure& structure);

// rho_i = rank of participant i's generator columns, over L.
std::vector<Rational> coding_rates(const schemes::LinearScheme& s);

}  // namespace rampss::analysis
