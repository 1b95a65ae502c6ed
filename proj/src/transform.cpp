#include "rampss/transform.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace rampss::transform {

using access::Subset;
using analysis::SecretSet;

void validate_spec(const HilbertSpec& spec) {
    gf::require_prime(spec.p);
    std::size_t L = spec.xs.size();
    if (L == 0 || spec.ys.size() != L)
        throw SpecViolation("need equally many x and y values, at least one each");
    for (std::uint64_t v : spec.xs)
        if (v >= spec.p) throw SpecViolation("x value out of range");
    for (std::uint64_t v : spec.ys)
        if (v >= spec.p) throw SpecViolation("y value out of range");
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = 0; j < L; ++j)
            if (gf::add_mod(spec.xs[i], spec.ys[j], spec.p) == 0)
                throw SpecViolation("x" + std::to_string(i + 1) + " + y" +
                                    std::to_string(j + 1) + " = 0");
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = i + 1; j < L; ++j) {
            if (spec.xs[i] == spec.xs[j])
                throw SpecViolation("x" + std::to_string(i + 1) + " = x" +
                                    std::to_string(j + 1));
            if (spec.ys[i] == spec.ys[j])
                throw SpecViolation("y" + std::to_string(i + 1) + " = y" +
                                    std::to_string(j + 1));
        }
}

gf::FieldMatrix hilbert_matrix(const HilbertSpec& spec) {
    validate_spec(spec);
    std::size_t L = spec.xs.size();
    gf::FieldMatrix m(L, L, spec.p);
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = 0; j < L; ++j)
            m.set(i, j,
                  static_cast<std::int64_t>(gf::inv_mod(
                      gf::add_mod(spec.xs[i], spec.ys[j], spec.p), spec.p)));
    return m;
}

gf::FieldElement hilbert_det(const HilbertSpec& spec) {
    gf::require_prime(spec.p);
    std::size_t L = spec.xs.size();
    if (L == 0 || spec.ys.size() != L)
        throw SpecViolation("need equally many x and y values, at least one each");
    std::uint64_t num = 1 % spec.p, den = 1 % spec.p;
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = i + 1; j < L; ++j) {
            num = gf::mul_mod(num, gf::sub_mod(spec.xs[i] % spec.p, spec.xs[j] % spec.p, spec.p),
                              spec.p);
            num = gf::mul_mod(num, gf::sub_mod(spec.ys[i] % spec.p, spec.ys[j] % spec.p, spec.p),
                              spec.p);
        }
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = 0; j < L; ++j) {
            std::uint64_t sum = gf::add_mod(spec.xs[i] % spec.p, spec.ys[j] % spec.p, spec.p);
            if (sum == 0) throw SpecViolation("x" + std::to_string(i + 1) + " + y" +
                                              std::to_string(j + 1) + " = 0");
            den = gf::mul_mod(den, sum, spec.p);
        }
    return gf::FieldElement(static_cast<std::int64_t>(
                                gf::mul_mod(num, gf::inv_mod(den, spec.p), spec.p)),
                            spec.p);
}

namespace {

bool spec_ok(const HilbertSpec& spec) {
    try {
        validate_spec(spec);
        return true;
    } catch (const SpecViolation&) {
        return false;
    }
}

// Lexicographically next strictly increasing tuple over [0, p).
bool next_tuple(std::vector<std::uint64_t>& t, std::uint64_t p) {
    std::size_t L = t.size();
    for (std::size_t i = L; i-- > 0;) {
        if (t[i] + (L - i) < p) {
            ++t[i];
            for (std::size_t j = i + 1; j < L; ++j) t[j] = t[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::uint64_t> first_tuple(int L) {
    std::vector<std::uint64_t> t(L);
    for (int i = 0; i < L; ++i) t[i] = i;
    return t;
}

}  // namespace

HilbertSpec default_hilbert_spec(int L, std::uint64_t p) {
    gf::require_prime(p);
    if (L < 1) throw SpecViolation("need L >= 1");
    HilbertSpec canonical;
    canonical.p = p;
    canonical.xs.resize(L);
    canonical.ys.resize(L);
    for (int i = 0; i < L; ++i) canonical.xs[i] = (i + 1) % p;
    canonical.ys[0] = 0;
    for (int i = 1; i < L; ++i) canonical.ys[i] = (L + i) % p;
    if (spec_ok(canonical)) return canonical;

    if (static_cast<std::uint64_t>(L) > p)
        throw FieldTooSmall("GF(" + std::to_string(p) + ") has no " + std::to_string(L) +
                            " distinct values");
    HilbertSpec s;
    s.p = p;
    for (s.xs = first_tuple(L);; ) {
        for (s.ys = first_tuple(L);; ) {
            if (spec_ok(s)) return s;
            if (!next_tuple(s.ys, p)) break;
        }
        if (!next_tuple(s.xs, p)) break;
    }
    throw FieldTooSmall("no Hilbert parameters of size " + std::to_string(L) +
                        " exist over GF(" + std::to_string(p) + ")");
}

gf::FieldMatrix default_T(int L, std::uint64_t p) {
    return hilbert_matrix(default_hilbert_spec(L, p)).inverse();
}

namespace {

std::vector<std::vector<std::size_t>> index_combinations(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    while (true) {
        out.push_back(c);
        std::size_t i = k;
        while (i-- > 0) {
            if (c[i] + (k - i) < n) {
                ++c[i];
                for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
                break;
            }
            if (i == 0) return out;
        }
    }
}

SuperregularResult superregular_impl(const gf::FieldMatrix& m, bool parallel) {
    for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
        auto row_sets = index_combinations(m.rows(), k);
        auto col_sets = index_combinations(m.cols(), k);
        long long best = -1;  // encoded (row index * #cols + col index), min wins
        long long n_rows = static_cast<long long>(row_sets.size());
        long long n_cols = static_cast<long long>(col_sets.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
        for (long long ri = 0; ri < n_rows; ++ri) {
            long long local = -1;
            for (long long ci = 0; ci < n_cols; ++ci) {
                if (m.submatrix(row_sets[ri], col_sets[ci]).det().is_zero()) {
                    local = ri * n_cols + ci;
                    break;
                }
            }
            if (local >= 0) {
#ifdef _OPENMP
#pragma omp critical
#endif
                {
                    if (best < 0 || local < best) best = local;
                }
            }
        }
        (void)parallel;
        if (best >= 0)
            return {false, row_sets[best / n_cols], col_sets[best % n_cols]};
    }
    return {};
}

}  // namespace

SuperregularResult superregular_check(const gf::FieldMatrix& m) {
    return superregular_impl(m, true);
}

SuperregularResult superregular_check_serial(const gf::FieldMatrix& m) {
    return superregular_impl(m, false);
}

namespace {

Eq22Result eq22_with_report(const gf::FieldMatrix& t, const schemes::LinearScheme& s,
                            const access::AccessStructure& structure,
                            const analysis::ClassificationReport& report, bool strict) {
    if (!report.pd)
        throw NotPD("the scheme is not partially decryptable for this structure");
    gf::FieldMatrix tinv = t.inverse();
    SecretSet all = (SecretSet{1} << s.L) - 1;
    std::uint64_t count = std::uint64_t{1} << s.n;
    for (std::uint64_t a = 0; a < count; ++a) {
        int level = access::level_of(structure, static_cast<Subset>(a));
        if (level == s.L) continue;  // no undetermined rows; vacuous
        std::vector<SecretSet> witnesses;
        if (!strict || level == 0 || level == s.L) {
            witnesses.push_back(report.pd_witness[a]);
        } else {
            for (SecretSet j : analysis::masks_of_size(s.L, level)) {
                if (analysis::cond_entropy(s, j, static_cast<Subset>(a)) != 0) continue;
                if (analysis::cond_entropy(s, all & ~j, static_cast<Subset>(a)) !=
                    s.L - level)
                    continue;
                witnesses.push_back(j);
            }
        }
        for (SecretSet w : witnesses) {
            auto row_members = access::members(all & ~w);
            std::vector<std::size_t> rows(row_members.begin(), row_members.end());
            for (SecretSet cols_mask : analysis::masks_of_size(s.L, s.L - level)) {
                auto col_members = access::members(cols_mask);
                std::vector<std::size_t> cols(col_members.begin(), col_members.end());
                if (tinv.submatrix(rows, cols).rank() !=
                    static_cast<std::size_t>(s.L - level))
                    return {false, Eq22Violation{static_cast<Subset>(a), cols_mask}};
            }
        }
    }
    return {};
}

}  // namespace

Eq22Result eq22_check(const gf::FieldMatrix& t, const schemes::LinearScheme& s,
                      const access::AccessStructure& structure, bool strict) {
    return eq22_with_report(t, s, structure, analysis::classify(s, structure), strict);
}

schemes::LinearScheme apply_T(const schemes::LinearScheme& s, const gf::FieldMatrix& t) {
    if (t.rows() != static_cast<std::size_t>(s.L) || t.cols() != t.rows())
        throw schemes::BadParameters("T must be L x L");
    if (t.modulus() != s.p) throw schemes::BadParameters("T modulus mismatch");
    if (t.det().is_zero()) throw ConditionFailed("T is singular");
    schemes::LinearScheme out = s;
    out.G = gf::block_diag(t, gf::FieldMatrix::identity(s.m, s.p)) * s.G;
    return out;
}

StrengthenResult strengthen(const schemes::LinearScheme& s,
                            const access::AccessStructure& structure,
                            const std::optional<gf::FieldMatrix>& supplied_T,
                            bool strict_witnesses) {
    analysis::ClassificationReport before = analysis::classify(s, structure);
    if (!before.pd)
        throw NotPD("the scheme is not partially decryptable for this structure");
    gf::FieldMatrix t = supplied_T ? *supplied_T : default_T(s.L, s.p);
    if (supplied_T) {
        if (t.rows() != static_cast<std::size_t>(s.L) || t.cols() != t.rows())
            throw schemes::BadParameters("T must be L x L");
        if (t.modulus() != s.p) throw schemes::BadParameters("T modulus mismatch");
        if (t.det().is_zero()) throw ConditionFailed("supplied T is singular");
    }
    Eq22Result cond = eq22_with_report(t, s, structure, before, strict_witnesses);
    if (!cond.ok) {
        std::string cols;
        for (int i : access::members(cond.violation->secret_cols))
            cols += (cols.empty() ? "S" : ",S") + std::to_string(i + 1);
        throw ConditionFailed("T fails the rank condition at coalition " +
                              access::subset_name(cond.violation->subset, s.n) +
                              " and secret columns {" + cols + "}");
    }
    schemes::LinearScheme transformed = apply_T(s, t);
    analysis::ClassificationReport after = analysis::classify(transformed, structure);
    if (!after.strong)
        throw std::logic_error("rank condition held but the result is not strong");
    return {std::move(transformed), std::move(t), std::move(after)};
}

}  // namespace rampss::transform
