#include "rampss/schemes.hpp"

#include <algorithm>
#include <set>

namespace rampss::schemes {

using access::Subset;

std::vector<int> LinearScheme::columns_of(Subset a) const {
    std::vector<int> cols;
    for (int c = 0; c < total_symbols(); ++c)
        if (a & (Subset{1} << symbol_owner[c])) cols.push_back(c);
    return cols;
}

int LinearScheme::symbols_of(int participant) const {
    int k = 0;
    for (int owner : symbol_owner)
        if (owner == participant) ++k;
    return k;
}

gf::FieldMatrix LinearScheme::columns(Subset a) const {
    auto cols = columns_of(a);
    std::vector<std::size_t> row_idx(G.rows()), col_idx(cols.begin(), cols.end());
    for (std::size_t r = 0; r < G.rows(); ++r) row_idx[r] = r;
    return G.submatrix(row_idx, col_idx);
}

std::string LinearScheme::symbol_name(int column) const {
    int owner = symbol_owner[column];
    if (symbols_of(owner) == 1) return participant_names[owner];
    int k = 0;
    for (int c = 0; c <= column; ++c)
        if (symbol_owner[c] == owner) ++k;
    return participant_names[owner] + "." + std::to_string(k);
}

void validate_scheme(const LinearScheme& s) {
    if (!gf::is_prime(s.p)) throw BadParameters("scheme modulus is not prime");
    if (s.L < 1 || s.m < 0) throw BadParameters("need L >= 1 and m >= 0");
    if (s.n < 1 || s.n > access::kMaxParticipants)
        throw BadParameters("participant count out of range");
    if (s.G.rows() != static_cast<std::size_t>(s.L + s.m))
        throw BadParameters("generator must have L+m rows");
    if (s.G.modulus() != s.p) throw BadParameters("generator modulus mismatch");
    if (s.symbol_owner.size() != s.G.cols())
        throw BadParameters("one owner per generator column required");
    for (int owner : s.symbol_owner)
        if (owner < 0 || owner >= s.n) throw BadParameters("symbol owner out of range");
    if (s.participant_names.size() != static_cast<std::size_t>(s.n))
        throw BadParameters("one name per participant required");
}

namespace {

std::vector<std::string> default_names(int n) {
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) names[i] = "V" + std::to_string(i + 1);
    return names;
}

}  // namespace

ShareBundle encode(const LinearScheme& s, std::span<const std::uint64_t> secrets,
                   std::span<const std::uint64_t> randoms) {
    if (secrets.size() != static_cast<std::size_t>(s.L))
        throw BadParameters("expected " + std::to_string(s.L) + " secret symbols");
    if (randoms.size() != static_cast<std::size_t>(s.m))
        throw BadParameters("expected " + std::to_string(s.m) + " random symbols");
    std::vector<std::uint64_t> input(s.L + s.m);
    for (int i = 0; i < s.L; ++i) input[i] = secrets[i] % s.p;
    for (int i = 0; i < s.m; ++i) input[s.L + i] = randoms[i] % s.p;
    ShareBundle b;
    b.participants = s.full_set();
    b.values.resize(s.total_symbols());
    for (int c = 0; c < s.total_symbols(); ++c) {
        std::uint64_t v = 0;
        for (int r = 0; r < s.L + s.m; ++r)
            v = gf::add_mod(v, gf::mul_mod(input[r], s.G.at(r, c), s.p), s.p);
        b.values[c] = v;
    }
    return b;
}

ShareBundle restrict_bundle(const LinearScheme& s, const ShareBundle& b,
                            Subset coalition) {
    if (!access::contains(b.participants, coalition))
        throw BadParameters("coalition not covered by the bundle");
    auto have = s.columns_of(b.participants);
    auto want = s.columns_of(coalition);
    ShareBundle out;
    out.participants = coalition;
    for (int c : want) {
        auto it = std::lower_bound(have.begin(), have.end(), c);
        out.values.push_back(b.values[it - have.begin()]);
    }
    return out;
}

gf::FieldMatrix recoverable_secret_basis(const LinearScheme& s, Subset coalition) {
    gf::FieldMatrix ga = s.columns(coalition);
    gf::FieldMatrix basis = gf::column_basis(ga);  // (L+m) x r
    std::vector<std::size_t> random_rows(s.m), all_cols(basis.cols());
    for (int i = 0; i < s.m; ++i) random_rows[i] = s.L + i;
    for (std::size_t c = 0; c < basis.cols(); ++c) all_cols[c] = c;
    gf::FieldMatrix bottom = basis.submatrix(random_rows, all_cols);
    gf::FieldMatrix k = gf::kernel_basis(bottom);  // r x d
    gf::FieldMatrix combos = basis * k;            // (L+m) x d, random rows vanish
    std::vector<std::size_t> secret_rows(s.L), k_cols(k.cols());
    for (int i = 0; i < s.L; ++i) secret_rows[i] = i;
    for (std::size_t c = 0; c < k.cols(); ++c) k_cols[c] = c;
    gf::FieldMatrix tops = combos.submatrix(secret_rows, k_cols);
    return gf::canonical_row_basis(tops.transpose());
}

ReconstructResult reconstruct(const LinearScheme& s, const ShareBundle& b) {
    auto cols = s.columns_of(b.participants);
    if (b.values.size() != cols.size())
        throw BadParameters("bundle holds " + std::to_string(b.values.size()) +
                            " values but the coalition owns " +
                            std::to_string(cols.size()) + " symbols");
    for (std::uint64_t v : b.values)
        if (v >= s.p) throw BadParameters("share value out of range");
    gf::FieldMatrix ga = s.columns(b.participants);
    std::vector<std::vector<std::uint64_t>> coeffs;
    coeffs.reserve(s.L);
    for (int i = 0; i < s.L; ++i) {
        std::vector<std::uint64_t> target(s.L + s.m, 0);
        target[i] = 1;
        auto alpha = gf::solve_linear(ga, target);
        if (!alpha) {
            ReconstructResult r;
            r.recoverable = recoverable_secret_basis(s, b.participants);
            return r;
        }
        coeffs.push_back(std::move(*alpha));
    }
    std::vector<std::uint64_t> secrets(s.L, 0);
    for (int i = 0; i < s.L; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            secrets[i] =
                gf::add_mod(secrets[i], gf::mul_mod(coeffs[i][j], b.values[j], s.p), s.p);
    ReconstructResult r;
    r.secrets = std::move(secrets);
    r.recoverable = gf::FieldMatrix::identity(s.L, s.p);
    return r;
}

namespace {

// Shared by isn_perfect and pd_concat: emit the additive-split columns for
// one monotone family, writing into a column list over rows 0..rows-1 with
// the secret at secret_row and fresh randoms starting at random_row.
struct ColumnBuilder {
    int rows;
    std::vector<std::vector<std::int64_t>> columns;  // column-major
    std::vector<int> owners;

    void add(int owner, const std::vector<std::pair<int, std::int64_t>>& terms) {
        std::vector<std::int64_t> col(rows, 0);
        for (auto [row, coeff] : terms) col[row] = coeff;
        columns.push_back(std::move(col));
        owners.push_back(owner);
    }
};

void check_family(const std::vector<Subset>& family, int n) {
    if (family.empty()) throw BadParameters("family must be nonempty");
    Subset full = (Subset{1} << n) - 1;
    for (Subset b : family) {
        if (b == 0) throw BadParameters("family lists the empty set");
        if (!access::contains(full, b))
            throw BadParameters("family references a participant beyond n");
    }
    for (Subset a : family)
        for (Subset b : family)
            if (a != b && access::contains(a, b))
                throw BadParameters("family is not an antichain");
}

int split_randoms(const std::vector<Subset>& family) {
    int m = 0;
    for (Subset b : family) m += access::popcount(b) - 1;
    return m;
}

void append_family_columns(ColumnBuilder& cb, const std::vector<Subset>& family,
                           int secret_row, int random_row) {
    std::vector<Subset> sets = family;
    std::sort(sets.begin(), sets.end());
    int next_random = random_row;
    for (Subset b : sets) {
        auto idx = access::members(b);
        int t = static_cast<int>(idx.size());
        if (t == 1) {
            cb.add(idx[0], {{secret_row, 1}});
            continue;
        }
        for (int j = 0; j < t - 1; ++j) cb.add(idx[j], {{next_random + j, 1}});
        std::vector<std::pair<int, std::int64_t>> last{{secret_row, 1}};
        for (int j = 0; j < t - 1; ++j) last.emplace_back(next_random + j, -1);
        cb.add(idx[t - 1], last);
        next_random += t - 1;
    }
}

LinearScheme scheme_from_builder(ColumnBuilder& cb, std::uint64_t p, int L, int m,
                                 int n) {
    LinearScheme s;
    s.p = p;
    s.L = L;
    s.m = m;
    s.n = n;
    s.symbol_owner = cb.owners;
    s.participant_names = default_names(n);
    s.G = gf::FieldMatrix(L + m, cb.columns.size(), p);
    for (std::size_t c = 0; c < cb.columns.size(); ++c)
        for (int r = 0; r < L + m; ++r) s.G.set(r, c, cb.columns[c][r]);
    validate_scheme(s);
    return s;
}

}  // namespace

LinearScheme isn_perfect(const std::vector<Subset>& family_minimal, int n,
                         std::uint64_t p) {
    gf::require_prime(p);
    if (n < 1 || n > access::kMaxParticipants)
        throw BadParameters("participant count out of range");
    check_family(family_minimal, n);
    int m = split_randoms(family_minimal);
    ColumnBuilder cb{1 + m, {}, {}};
    append_family_columns(cb, family_minimal, 0, 1);
    return scheme_from_builder(cb, p, 1, m, n);
}

LinearScheme pd_concat(const access::AccessStructure& s, std::uint64_t p) {
    gf::require_prime(p);
    access::require_valid(s);
    int m = 0;
    for (const auto& family : s.cumulative_minimal)
        if (!family.empty()) m += split_randoms(family);
    ColumnBuilder cb{s.L + m, {}, {}};
    int random_row = s.L;
    for (int l = 1; l <= s.L; ++l) {
        const auto& family = s.cumulative_minimal[l - 1];
        if (family.empty()) continue;  // no coalition ever reaches this level
        check_family(family, s.n);
        append_family_columns(cb, family, l - 1, random_row);
        random_row += split_randoms(family);
    }
    return scheme_from_builder(cb, p, s.L, m, s.n);
}

LinearScheme shamir_ramp(int k, int L, int n, std::uint64_t p,
                         std::vector<std::uint64_t> points) {
    gf::require_prime(p);
    if (!(1 <= L && L <= k)) throw BadParameters("need 1 <= L <= k");
    if (n < 1 || n > access::kMaxParticipants)
        throw BadParameters("participant count out of range");
    if (static_cast<std::uint64_t>(n) >= p)
        throw BadParameters("need n < p for distinct nonzero evaluation points");
    if (points.empty()) {
        points.resize(n);
        for (int i = 0; i < n; ++i) points[i] = i + 1;
    }
    if (points.size() != static_cast<std::size_t>(n))
        throw BadParameters("expected one evaluation point per participant");
    std::set<std::uint64_t> seen;
    for (auto& x : points) {
        x %= p;
        if (x == 0) throw BadParameters("evaluation points must be nonzero");
        if (!seen.insert(x).second)
            throw BadParameters("evaluation points must be distinct");
    }
    int m = k - L;
    LinearScheme s;
    s.p = p;
    s.L = L;
    s.m = m;
    s.n = n;
    s.symbol_owner.resize(n);
    for (int i = 0; i < n; ++i) s.symbol_owner[i] = i;
    s.participant_names = default_names(n);
    s.G = gf::FieldMatrix(k, n, p);
    for (int i = 0; i < n; ++i) {
        std::uint64_t power = 1 % p;
        for (int r = 0; r < k; ++r) {
            s.G.set(r, i, static_cast<std::int64_t>(power));
            power = gf::mul_mod(power, points[i], p);
        }
    }
    validate_scheme(s);
    return s;
}

Fixture builtin_fixture(std::string_view name, std::uint64_t p) {
    if (name == "example1") {
        if (p == 0) p = 3;
        gf::require_prime(p);
        LinearScheme s;
        s.p = p;
        s.L = 2;
        s.m = 4;
        s.n = 4;
        // Rows S1,S2,R1,R2,R3,R4; shares as printed: V1={R1,R3}, V2={R2,R4},
        // V3={R1+R4+S1, R2+R3+S2}, V4={R1+S1, R2+S1}.
        s.G = gf::FieldMatrix::from_rows(
            {
                {0, 0, 0, 0, 1, 0, 1, 1},  // S1
                {0, 0, 0, 0, 0, 1, 0, 0},  // S2
                {1, 0, 0, 0, 1, 0, 1, 0},  // R1
                {0, 0, 1, 0, 0, 1, 0, 1},  // R2
                {0, 1, 0, 0, 0, 1, 0, 0},  // R3
                {0, 0, 0, 1, 1, 0, 0, 0},  // R4
            },
            p);
        s.symbol_owner = {0, 0, 1, 1, 2, 2, 3, 3};
        s.participant_names = default_names(4);
        validate_scheme(s);
        // The structure these shares realize. Note {V1,V3,V4} recovers both
        // secrets (R1 gives S1 from V4, then R2, then S2 from V3), so it sits
        // in the top level alongside {V1,V2,V3}.
        access::AccessStructure g;
        g.n = 4;
        g.L = 2;
        g.cumulative_minimal = {
            {access::subset_of_indices({0, 3}), access::subset_of_indices({1, 3}),
             access::subset_of_indices({0, 1, 2})},
            {access::subset_of_indices({0, 1, 2}), access::subset_of_indices({0, 2, 3})}};
        access::require_valid(g);
        return {std::move(s), std::move(g)};
    }
    if (name == "remark3") {
        if (p == 0) p = 3;
        gf::require_prime(p);
        LinearScheme s;
        s.p = p;
        s.L = 2;
        s.m = 1;
        s.n = 3;
        // Rows S1,S2,R; shares V1=S1+R, V2=S1+S2+R, V3=R.
        s.G = gf::FieldMatrix::from_rows({{1, 1, 0}, {0, 1, 0}, {1, 1, 1}}, p);
        s.symbol_owner = {0, 1, 2};
        s.participant_names = default_names(3);
        validate_scheme(s);
        return {std::move(s), access::threshold_structure(3, 2, 3)};
    }
    if (name == "remark1") {
        if (p == 0) p = 17;
        if (p != 17)
            throw BadParameters("the remark1 fixture is defined over GF(17)");
        return {shamir_ramp(4, 2, 15, 17), access::threshold_structure(4, 2, 15)};
    }
    throw BadParameters("unknown fixture: " + std::string(name));
}

}  // namespace rampss::schemes
