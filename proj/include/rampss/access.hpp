#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// L-level access structures over n participants, represented by the minimal
// sets of each cumulative family. Monotonicity is a representation invariant:
// membership is always "contains some listed minimal set".

namespace rampss::access {

// Participant subset as a bitmask; participant i (0-based) is bit i.
using Subset = std::uint32_t;

inline constexpr int kMaxParticipants = 20;  // 2^n enumeration in classification

struct BadParameters : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotRampCompatible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int popcount(Subset a);
bool contains(Subset a, Subset b);  // b subseteq a
std::vector<int> members(Subset a);         // ascending 0-based indices
Subset subset_of_indices(const std::vector<int>& idx);  // 0-based
std::string subset_name(Subset a, int n);   // "{V1,V4}"

// Levels are 1..L; cumulative_minimal[l-1] lists the minimal sets of the
// family of subsets that decrypt at least l secret symbols.
struct AccessStructure {
    int n = 0;
    int L = 0;
    std::vector<std::vector<Subset>> cumulative_minimal;
};

// One monotone family per secret; families[l-1] given by its minimal sets.
struct PluralAccessStructure {
    int n = 0;
    int L = 0;
    std::vector<std::vector<Subset>> families;
};

struct ValidationResult {
    bool ok = true;
    int level = 0;        // offending level when !ok
    std::string message;  // names the offending sets
};

// Antichain + nesting + basic range checks; verdict-returning.
ValidationResult validate(const AccessStructure& s);

// Throws BadParameters when validate fails.
void require_valid(const AccessStructure& s);

// true iff A contains some minimal set of the level-l cumulative family.
bool in_cumulative(const AccessStructure& s, int level, Subset a);

// max{l : A in cumulative family l}, 0 when A is in none.
int level_of(const AccessStructure& s, Subset a);

// Minimal sets of the exact-level family: members of level l that drop out
// of it when any single participant is removed. Enumerates 2^n.
std::vector<Subset> minimal_sets(const AccessStructure& s, int level);

// Cumulative family l has minimal sets = all subsets of size k-L+l.
AccessStructure threshold_structure(int k, int L, int n);

// Assigns each subset the level "number of plural families containing it",
// then rebuilds the minimal-set representation. NotRampCompatible when the
// induced levels are not monotone.
AccessStructure plural_to_ramp(const PluralAccessStructure& p);

// The converse decomposition: family l = cumulative family l of the ramp
// structure. plural_to_ramp(ramp_to_plural(s)) == s for valid s.
PluralAccessStructure ramp_to_plural(const AccessStructure& s);

// Reduce a list of subsets to its minimal elements (sorted, deduplicated).
std::vector<Subset> minimalize(std::vector<Subset> sets);

}  // namespace rampss::access
