#include "rampss/access.hpp"

#include <algorithm>
#include <bit>

namespace rampss::access {

int popcount(Subset a) { return std::popcount(a); }

bool contains(Subset a, Subset b) { return (b & ~a) == 0; }

std::vector<int> members(Subset a) {
    std::vector<int> idx;
    for (int i = 0; a != 0; ++i, a >>= 1)
        if (a & 1u) idx.push_back(i);
    return idx;
}

Subset subset_of_indices(const std::vector<int>& idx) {
    Subset a = 0;
    for (int i : idx) a |= Subset{1} << i;
    return a;
}

std::string subset_name(Subset a, int n) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < n; ++i)
        if (a & (Subset{1} << i)) {
            if (!first) s += ",";
            s += "V" + std::to_string(i + 1);
            first = false;
        }
    return s + "}";
}

std::vector<Subset> minimalize(std::vector<Subset> sets) {
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<Subset> out;
    for (Subset a : sets) {
        bool minimal = true;
        for (Subset b : sets)
            if (b != a && contains(a, b)) { minimal = false; break; }
        if (minimal) out.push_back(a);
    }
    return out;
}

ValidationResult validate(const AccessStructure& s) {
    auto fail = [](int level, std::string msg) {
        return ValidationResult{false, level, std::move(msg)};
    };
    if (s.n < 1 || s.n > kMaxParticipants)
        return fail(0, "participant count " + std::to_string(s.n) + " out of range");
    if (s.L < 1) return fail(0, "level count must be at least 1");
    if (static_cast<int>(s.cumulative_minimal.size()) != s.L)
        return fail(0, "expected " + std::to_string(s.L) + " level lists");
    Subset full = (Subset{1} << s.n) - 1;
    for (int l = 1; l <= s.L; ++l) {
        const auto& sets = s.cumulative_minimal[l - 1];
        for (Subset a : sets) {
            if (a == 0)
                return fail(l, "level " + std::to_string(l) +
                                   " lists the empty set as minimal");
            if (!contains(full, a))
                return fail(l, "level " + std::to_string(l) +
                                   " references a participant beyond n");
        }
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = 0; j < sets.size(); ++j)
                if (i != j && contains(sets[i], sets[j]))
                    return fail(l, "level " + std::to_string(l) + " is not an antichain: " +
                                       subset_name(sets[j], s.n) + " is contained in " +
                                       subset_name(sets[i], s.n));
    }
    // Nesting: each minimal set one level up must contain a minimal set below.
    for (int l = 1; l < s.L; ++l) {
        for (Subset a : s.cumulative_minimal[l]) {
            bool nested = false;
            for (Subset b : s.cumulative_minimal[l - 1])
                if (contains(a, b)) { nested = true; break; }
            if (!nested)
                return fail(l + 1, subset_name(a, s.n) + " decrypts " +
                                       std::to_string(l + 1) +
                                       " secrets but is missing from level " +
                                       std::to_string(l));
        }
    }
    return {};
}

void require_valid(const AccessStructure& s) {
    ValidationResult r = validate(s);
    if (!r.ok) throw BadParameters("invalid access structure: " + r.message);
}

bool in_cumulative(const AccessStructure& s, int level, Subset a) {
    for (Subset b : s.cumulative_minimal[level - 1])
        if (contains(a, b)) return true;
    return false;
}

int level_of(const AccessStructure& s, Subset a) {
    for (int l = s.L; l >= 1; --l)
        if (in_cumulative(s, l, a)) return l;
    return 0;
}

std::vector<Subset> minimal_sets(const AccessStructure& s, int level) {
    if (level < 1 || level > s.L) throw BadParameters("level out of range");
    std::vector<Subset> out;
    Subset full = (Subset{1} << s.n) - 1;
    for (Subset a = 0; a <= full; ++a) {
        if (level_of(s, a) != level) continue;
        bool minimal = true;
        for (int i = 0; i < s.n && minimal; ++i) {
            Subset bit = Subset{1} << i;
            if ((a & bit) && level_of(s, a & ~bit) == level) minimal = false;
        }
        if (minimal) out.push_back(a);
    }
    return out;
}

AccessStructure threshold_structure(int k, int L, int n) {
    if (!(1 <= L && L <= k && k <= n && n <= kMaxParticipants))
        throw BadParameters("threshold structure needs 1 <= L <= k <= n <= " +
                            std::to_string(kMaxParticipants));
    AccessStructure s;
    s.n = n;
    s.L = L;
    s.cumulative_minimal.resize(L);
    Subset full = (Subset{1} << n) - 1;
    for (Subset a = 0; a <= full; ++a) {
        int size = popcount(a);
        int l = size - (k - L);
        if (1 <= l && l <= L) s.cumulative_minimal[l - 1].push_back(a);
    }
    return s;
}

AccessStructure plural_to_ramp(const PluralAccessStructure& p) {
    if (p.n < 1 || p.n > kMaxParticipants) throw BadParameters("participant count out of range");
    if (p.L < 1 || static_cast<int>(p.families.size()) != p.L)
        throw BadParameters("expected one family per secret");
    Subset full = (Subset{1} << p.n) - 1;
    auto family_member = [&](int f, Subset a) {
        for (Subset b : p.families[f])
            if (contains(a, b)) return true;
        return false;
    };
    std::vector<int> level(full + 1, 0);
    for (Subset a = 0; a <= full; ++a)
        for (int f = 0; f < p.L; ++f)
            if (family_member(f, a)) ++level[a];
    // Induced cumulative families must be monotone under set inclusion.
    for (Subset a = 0; a <= full; ++a)
        for (int i = 0; i < p.n; ++i) {
            Subset bit = Subset{1} << i;
            if ((a & bit) && level[a & ~bit] > level[a])
                throw NotRampCompatible(
                    "induced level of " + subset_name(a & ~bit, p.n) + " exceeds that of " +
                    subset_name(a, p.n));
        }
    AccessStructure s;
    s.n = p.n;
    s.L = p.L;
    s.cumulative_minimal.resize(p.L);
    for (int l = 1; l <= p.L; ++l) {
        std::vector<Subset> family;
        for (Subset a = 0; a <= full; ++a)
            if (level[a] >= l) family.push_back(a);
        s.cumulative_minimal[l - 1] = minimalize(std::move(family));
    }
    require_valid(s);
    return s;
}

PluralAccessStructure ramp_to_plural(const AccessStructure& s) {
    require_valid(s);
    return PluralAccessStructure{s.n, s.L, s.cumulative_minimal};
}

}  // namespace rampss::access
