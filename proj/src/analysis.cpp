#include "rampss/analysis.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rampss::analysis {

using access::Subset;

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::vector<std::uint32_t> masks_of_size(int universe, int size) {
    std::vector<std::uint32_t> out;
    std::uint32_t full = universe == 32 ? ~0u : (1u << universe) - 1;
    for (std::uint32_t m = 0; m <= full; ++m) {
        if (std::popcount(m) == size) out.push_back(m);
        if (m == full) break;
    }
    return out;
}

namespace {

gf::FieldMatrix unit_columns(int rows, SecretSet j, std::uint64_t p) {
    auto idx = access::members(j);
    gf::FieldMatrix e(rows, idx.size(), p);
    for (std::size_t c = 0; c < idx.size(); ++c) e.set(idx[c], c, 1);
    return e;
}

void check_dims(const schemes::LinearScheme& s, const access::AccessStructure& g) {
    if (s.n != g.n || s.L != g.L)
        throw DimensionMismatch("scheme is (n=" + std::to_string(s.n) + ", L=" +
                                std::to_string(s.L) + ") but structure is (n=" +
                                std::to_string(g.n) + ", L=" + std::to_string(g.L) + ")");
}

}  // namespace

int cond_entropy(const schemes::LinearScheme& s, SecretSet j, Subset a) {
    gf::FieldMatrix ga = s.columns(a);
    if (j == 0) return 0;
    gf::FieldMatrix aug = gf::hstack(unit_columns(s.L + s.m, j, s.p), ga);
    return static_cast<int>(aug.rank() - ga.rank());
}

std::vector<LeakFunctional> decryptable_subspace(const schemes::LinearScheme& s,
                                                 Subset a) {
    gf::FieldMatrix basis = schemes::recoverable_secret_basis(s, a);
    gf::FieldMatrix ga = s.columns(a);
    std::vector<LeakFunctional> out;
    for (std::size_t r = 0; r < basis.rows(); ++r) {
        LeakFunctional f;
        f.secret_coeffs.resize(s.L);
        std::vector<std::uint64_t> target(s.L + s.m, 0);
        for (int i = 0; i < s.L; ++i) {
            f.secret_coeffs[i] = basis.at(r, i);
            target[i] = basis.at(r, i);
        }
        auto alpha = gf::solve_linear(ga, target);
        if (!alpha)
            throw std::logic_error("recoverable functional is not in the column space");
        f.share_coeffs = std::move(*alpha);
        out.push_back(std::move(f));
    }
    return out;
}

namespace {

// ---- brute-force oracle -------------------------------------------------

constexpr std::uint64_t kBruteGuard = 10'000'000;

std::uint64_t checked_total(const schemes::LinearScheme& s) {
    std::uint64_t total = 1;
    for (int i = 0; i < s.L + s.m; ++i) {
        if (total > kBruteGuard / s.p)
            throw TooLarge("p^(L+m) exceeds the enumeration guard");
        total *= s.p;
    }
    if (total > kBruteGuard) throw TooLarge("p^(L+m) exceeds the enumeration guard");
    return total;
}

struct CountTables {
    std::unordered_map<std::string, long long> joint;     // v-key + s-key
    std::unordered_map<std::string, long long> marginal;  // v-key
};

void tabulate_range(const schemes::LinearScheme& s, const std::vector<int>& j_idx,
                    const std::vector<int>& cols, std::uint64_t begin,
                    std::uint64_t end, CountTables& t) {
    int width = s.L + s.m;
    std::vector<std::uint64_t> input(width);
    // 4 bytes per symbol: the guard keeps p below 2^32.
    auto put = [](std::string& key, std::size_t slot, std::uint64_t v) {
        for (int b = 0; b < 4; ++b) key[4 * slot + b] = static_cast<char>(v >> (8 * b));
    };
    std::string vkey(4 * cols.size(), '\0');
    std::string jointkey(4 * (cols.size() + j_idx.size()), '\0');
    for (std::uint64_t x = begin; x < end; ++x) {
        std::uint64_t rem = x;
        for (int r = 0; r < width; ++r) {
            input[r] = rem % s.p;
            rem /= s.p;
        }
        for (std::size_t ci = 0; ci < cols.size(); ++ci) {
            std::uint64_t v = 0;
            for (int r = 0; r < width; ++r)
                v = (v + input[r] * s.G.at(r, cols[ci])) % s.p;
            put(vkey, ci, v);
        }
        std::copy(vkey.begin(), vkey.end(), jointkey.begin());
        for (std::size_t si = 0; si < j_idx.size(); ++si)
            put(jointkey, cols.size() + si, input[j_idx[si]]);
        ++t.joint[jointkey];
        ++t.marginal[vkey];
    }
}

// Exact conditional entropy from the tables. Each count contributes
// N(s,v) * (log_p N(v) - log_p N(s,v)); decomposing every count into prime
// powers expresses the total as sum_r c_r * log_p(r) with rational c_r.
// Logs of distinct primes are independent over the rationals, so the result
// is rational exactly when all coefficients with r != p vanish.
Rational entropy_from_tables(const CountTables& t, std::uint64_t p,
                             std::uint64_t total, std::size_t vkey_len) {
    std::unordered_map<long long, std::vector<std::pair<long long, int>>> factor_cache;
    auto factors = [&](long long x) -> const std::vector<std::pair<long long, int>>& {
        auto it = factor_cache.find(x);
        if (it != factor_cache.end()) return it->second;
        std::vector<std::pair<long long, int>> f;
        long long rem = x;
        for (long long d = 2; d * d <= rem; ++d)
            if (rem % d == 0) {
                int e = 0;
                while (rem % d == 0) {
                    rem /= d;
                    ++e;
                }
                f.emplace_back(d, e);
            }
        if (rem > 1) f.emplace_back(rem, 1);
        return factor_cache.emplace(x, std::move(f)).first->second;
    };

    std::unordered_map<long long, long long> coeff;  // prime -> integer numerator
    for (const auto& [key, njoint] : t.joint) {
        long long nmarg = t.marginal.at(key.substr(0, vkey_len));
        for (auto [prime, e] : factors(nmarg)) coeff[prime] += njoint * e;
        for (auto [prime, e] : factors(njoint)) coeff[prime] -= njoint * e;
    }
    long long num_p = 0;
    for (auto [prime, c] : coeff) {
        if (static_cast<std::uint64_t>(prime) == p)
            num_p = c;
        else if (c != 0)
            throw std::logic_error("conditional entropy is irrational in base p");
    }
    return Rational(num_p, static_cast<long long>(total));
}

Rational brute_entropy_impl(const schemes::LinearScheme& s, SecretSet j, Subset a,
                            bool parallel) {
    std::uint64_t total = checked_total(s);
    auto j_idx = access::members(j);
    std::vector<int> cols = s.columns_of(a);
    CountTables merged;
#ifdef _OPENMP
    if (parallel) {
        int threads = omp_get_max_threads();
        std::vector<CountTables> local(threads);
#pragma omp parallel num_threads(threads)
        {
            int tid = omp_get_thread_num();
            std::uint64_t chunk = (total + threads - 1) / threads;
            std::uint64_t begin = std::min<std::uint64_t>(total, tid * chunk);
            std::uint64_t end = std::min<std::uint64_t>(total, begin + chunk);
            tabulate_range(s, j_idx, cols, begin, end, local[tid]);
        }
        for (auto& t : local) {
            for (auto& [k, v] : t.joint) merged.joint[k] += v;
            for (auto& [k, v] : t.marginal) merged.marginal[k] += v;
        }
    } else
#endif
    {
        (void)parallel;
        tabulate_range(s, j_idx, cols, 0, total, merged);
    }
    return entropy_from_tables(merged, s.p, total, 4 * cols.size());
}

}  // namespace

Rational brute_entropy(const schemes::LinearScheme& s, SecretSet j, Subset a) {
    return brute_entropy_impl(s, j, a, true);
}

Rational brute_entropy_serial(const schemes::LinearScheme& s, SecretSet j, Subset a) {
    return brute_entropy_impl(s, j, a, false);
}

namespace {

// ---- classification ------------------------------------------------------

struct SubsetFacts {
    int level = 0;
    int full_ce = 0;
    bool ramp_ok = true;
    bool pd_ok = true;
    SecretSet witness = 0;
    std::vector<StrongViolation> strong;
};

SubsetFacts facts_for(const schemes::LinearScheme& s,
                      const access::AccessStructure& structure, Subset a) {
    SubsetFacts f;
    f.level = access::level_of(structure, a);
    SecretSet all = (s.L == 32 ? ~SecretSet{0} : (SecretSet{1} << s.L) - 1);
    f.full_ce = cond_entropy(s, all, a);
    f.ramp_ok = (f.full_ce == s.L - f.level);

    if (f.level == 0) {
        f.pd_ok = (f.full_ce == s.L);
        f.witness = 0;
    } else if (f.level == s.L) {
        f.pd_ok = (f.full_ce == 0);
        f.witness = all;
    } else {
        f.pd_ok = false;
        f.witness = kNoWitness;
        for (SecretSet j : masks_of_size(s.L, f.level)) {
            if (cond_entropy(s, j, a) != 0) continue;
            SecretSet rest = all & ~j;
            if (cond_entropy(s, rest, a) != s.L - f.level) continue;
            f.pd_ok = true;
            f.witness = j;
            break;
        }
    }

    if (f.level < s.L) {
        for (SecretSet j : masks_of_size(s.L, s.L - f.level)) {
            int got = cond_entropy(s, j, a);
            if (got != s.L - f.level)
                f.strong.push_back({a, j, s.L - f.level, got});
        }
    }
    return f;
}

ClassificationReport classify_impl(const schemes::LinearScheme& s,
                                   const access::AccessStructure& structure,
                                   bool parallel) {
    check_dims(s, structure);
    access::require_valid(structure);
    std::uint64_t count = std::uint64_t{1} << s.n;
    std::vector<SubsetFacts> facts(count);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
#endif
    for (long long a = 0; a < static_cast<long long>(count); ++a)
        facts[a] = facts_for(s, structure, static_cast<Subset>(a));
    (void)parallel;

    ClassificationReport r;
    r.n = s.n;
    r.L = s.L;
    r.p = s.p;
    r.ramp_valid = true;
    r.pd = true;
    r.pd_witness.resize(count, kNoWitness);
    bool eq14_ok = true;
    std::vector<Subset> leaky;
    for (std::uint64_t a = 0; a < count; ++a) {
        const SubsetFacts& f = facts[a];
        if (!f.ramp_ok) {
            r.ramp_valid = false;
            r.ramp_violations.push_back(
                {static_cast<Subset>(a), f.level, s.L - f.level, f.full_ce});
        }
        if (!f.pd_ok) {
            r.pd = false;
            r.pd_failures.push_back(static_cast<Subset>(a));
        }
        r.pd_witness[a] = f.witness;
        if (!f.strong.empty()) {
            eq14_ok = false;
            r.strong_violations.insert(r.strong_violations.end(), f.strong.begin(),
                                       f.strong.end());
            leaky.push_back(static_cast<Subset>(a));
        }
    }
    r.strong = r.ramp_valid && eq14_ok;
    for (Subset a : leaky) r.leaks.push_back({a, decryptable_subspace(s, a)});
    r.coding_rates = coding_rates(s);

    if (r.strong && !r.ramp_valid)
        throw std::logic_error("strong verdict without ramp validity");
    if (r.pd && !r.ramp_valid)
        throw std::logic_error("PD verdict without ramp validity");
    return r;
}

}  // namespace

ClassificationReport classify(const schemes::LinearScheme& s,
                              const access::AccessStructure& structure) {
    return classify_impl(s, structure, true);
}

ClassificationReport classify_serial(const schemes::LinearScheme& s,
                                     const access::AccessStructure& structure) {
    return classify_impl(s, structure, false);
}

std::vector<Rational> coding_rates(const schemes::LinearScheme& s) {
    std::vector<Rational> rates;
    rates.reserve(s.n);
    for (int i = 0; i < s.n; ++i) {
        gf::FieldMatrix gi = s.columns(Subset{1} << i);
        rates.emplace_back(static_cast<long long>(gi.rank()), s.L);
    }
    return rates;
}

}  // namespace rampss::analysis
