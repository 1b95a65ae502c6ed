#include "rampss/gf.hpp"

#include <algorithm>

namespace rampss::gf {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

void require_prime(std::uint64_t p) {
    // Memoized: matrix kernels construct elements in tight loops over one modulus.
    thread_local std::uint64_t last_ok = 0;
    if (p == last_ok) return;
    if (!is_prime(p))
        throw BadModulus("modulus " + std::to_string(p) + " is not prime");
    last_ok = p;
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t neg_mod(std::uint64_t a, std::uint64_t p) {
    return a == 0 ? 0 : p - a;
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw ZeroInverse("0 has no inverse mod " + std::to_string(p));
    // Extended Euclid on (a, p); p prime so gcd = 1.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce_mod(std::int64_t a, std::uint64_t p) {
    std::int64_t m = static_cast<std::int64_t>(p);
    std::int64_t r = a % m;
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
}

FieldElement field_inverse(FieldElement a) {
    return FieldElement(static_cast<std::int64_t>(inv_mod(a.value(), a.modulus())),
                        a.modulus());
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::uint64_t p)
    : rows_(rows), cols_(cols), p_(p), v_(rows * cols, 0) {
    require_prime(p);
}

FieldMatrix FieldMatrix::identity(std::size_t n, std::uint64_t p) {
    FieldMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.v_[i * n + i] = 1 % p;
    return m;
}

FieldMatrix FieldMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                                   std::uint64_t p) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.front().size();
    FieldMatrix m(r, c, p);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw DimensionMismatch("ragged row list");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

FieldElement FieldMatrix::element(std::size_t r, std::size_t c) const {
    return FieldElement(static_cast<std::int64_t>(at(r, c)), p_);
}

FieldMatrix FieldMatrix::transpose() const {
    FieldMatrix t(cols_, rows_, p_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.v_[c * rows_ + r] = at(r, c);
    return t;
}

FieldMatrix FieldMatrix::submatrix(std::span<const std::size_t> row_idx,
                                   std::span<const std::size_t> col_idx) const {
    FieldMatrix s(row_idx.size(), col_idx.size(), p_);
    for (std::size_t i = 0; i < row_idx.size(); ++i) {
        if (row_idx[i] >= rows_) throw DimensionMismatch("row index out of range");
        for (std::size_t j = 0; j < col_idx.size(); ++j) {
            if (col_idx[j] >= cols_) throw DimensionMismatch("col index out of range");
            s.v_[i * col_idx.size() + j] = at(row_idx[i], col_idx[j]);
        }
    }
    return s;
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.p_ != b.p_) throw ModulusMismatch("matrix product across moduli");
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    FieldMatrix c(a.rows_, b.cols_, a.p_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            std::uint64_t aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c.v_[i * b.cols_ + j] =
                    add_mod(c.v_[i * b.cols_ + j], mul_mod(aik, b.at(k, j), a.p_), a.p_);
        }
    return c;
}

bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.v_ == b.v_;
}

namespace {

// Forward elimination to row echelon form, in place. First nonzero pivot in
// column order. Returns pivot columns; if sign is non-null accumulates the
// row-swap sign (for determinants), and if normalize is true continues to RREF.
std::vector<std::size_t> eliminate(std::vector<std::uint64_t>& v, std::size_t rows,
                                   std::size_t cols, std::uint64_t p, bool normalize,
                                   int* sign = nullptr) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && v[pr * cols + c] == 0) ++pr;
        if (pr == rows) continue;
        if (pr != r) {
            for (std::size_t j = c; j < cols; ++j)
                std::swap(v[pr * cols + j], v[r * cols + j]);
            if (sign) *sign = -*sign;
        }
        std::uint64_t inv = inv_mod(v[r * cols + c], p);
        if (normalize)
            for (std::size_t j = c; j < cols; ++j)
                v[r * cols + j] = mul_mod(v[r * cols + j], inv, p);
        std::size_t lo = normalize ? 0 : r + 1;
        for (std::size_t i = lo; i < rows; ++i) {
            if (i == r) continue;
            std::uint64_t f = v[i * cols + c];
            if (f == 0) continue;
            if (!normalize) f = mul_mod(f, inv, p);
            for (std::size_t j = c; j < cols; ++j)
                v[i * cols + j] =
                    sub_mod(v[i * cols + j], mul_mod(f, v[r * cols + j], p), p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t FieldMatrix::rank() const {
    std::vector<std::uint64_t> work = v_;
    return eliminate(work, rows_, cols_, p_, false).size();
}

FieldElement FieldMatrix::det() const {
    if (rows_ != cols_) throw DimensionMismatch("determinant of non-square matrix");
    if (rows_ == 0) return FieldElement(1, p_);
    std::vector<std::uint64_t> work = v_;
    int sign = 1;
    auto pivots = eliminate(work, rows_, cols_, p_, false, &sign);
    if (pivots.size() < rows_) return FieldElement(0, p_);
    std::uint64_t d = 1 % p_;
    for (std::size_t i = 0; i < rows_; ++i) d = mul_mod(d, work[i * cols_ + i], p_);
    if (sign < 0) d = neg_mod(d, p_);
    return FieldElement(static_cast<std::int64_t>(d), p_);
}

FieldMatrix FieldMatrix::inverse() const {
    if (rows_ != cols_) throw DimensionMismatch("inverse of non-square matrix");
    FieldMatrix aug = hstack(*this, identity(rows_, p_));
    auto pivots = eliminate(aug.v_, rows_, aug.cols_, p_, true);
    // A pivot in the identity block means the left block lost rank.
    std::size_t left_rank = 0;
    for (std::size_t c : pivots)
        if (c < cols_) ++left_rank;
    if (left_rank < rows_)
        throw Singular("matrix of rank " + std::to_string(left_rank) +
                       " has no inverse");
    FieldMatrix inv(rows_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < rows_; ++j)
            inv.v_[i * rows_ + j] = aug.at(i, rows_ + j);
    return inv;
}

FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.modulus() != b.modulus()) throw ModulusMismatch("hstack across moduli");
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack row mismatch");
    FieldMatrix m(a.rows(), a.cols() + b.cols(), a.modulus());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c)
            m.set(r, c, static_cast<std::int64_t>(a.at(r, c)));
        for (std::size_t c = 0; c < b.cols(); ++c)
            m.set(r, a.cols() + c, static_cast<std::int64_t>(b.at(r, c)));
    }
    return m;
}

FieldMatrix block_diag(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.modulus() != b.modulus()) throw ModulusMismatch("block_diag across moduli");
    FieldMatrix m(a.rows() + b.rows(), a.cols() + b.cols(), a.modulus());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            m.set(r, c, static_cast<std::int64_t>(a.at(r, c)));
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
            m.set(a.rows() + r, a.cols() + c, static_cast<std::int64_t>(b.at(r, c)));
    return m;
}

std::optional<std::vector<std::uint64_t>> solve_linear(const FieldMatrix& m,
                                                       std::span<const std::uint64_t> b) {
    if (b.size() != m.rows()) throw DimensionMismatch("rhs length != rows");
    FieldMatrix rhs(m.rows(), 1, m.modulus());
    for (std::size_t r = 0; r < m.rows(); ++r)
        rhs.set(r, 0, static_cast<std::int64_t>(b[r] % m.modulus()));
    FieldMatrix aug = row_reduce(hstack(m, rhs));
    std::vector<std::uint64_t> x(m.cols(), 0);
    for (std::size_t r = 0; r < aug.rows(); ++r) {
        std::size_t c = 0;
        while (c < aug.cols() && aug.at(r, c) == 0) ++c;
        if (c == aug.cols()) break;           // zero row
        if (c == m.cols()) return std::nullopt;  // pivot in the rhs column
        x[c] = aug.at(r, m.cols());
    }
    return x;
}

FieldMatrix kernel_basis(const FieldMatrix& m) {
    FieldMatrix r = row_reduce(m);
    std::vector<std::size_t> pivot_of_col(m.cols(), SIZE_MAX);
    std::vector<std::size_t> pivot_cols;
    for (std::size_t row = 0; row < r.rows(); ++row) {
        std::size_t c = 0;
        while (c < r.cols() && r.at(row, c) == 0) ++c;
        if (c == r.cols()) break;
        pivot_of_col[c] = row;
        pivot_cols.push_back(c);
    }
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (pivot_of_col[c] == SIZE_MAX) free_cols.push_back(c);
    FieldMatrix k(m.cols(), free_cols.size(), m.modulus());
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        std::size_t fc = free_cols[j];
        k.set(fc, j, 1);
        for (std::size_t c : pivot_cols)
            k.set(c, j, -static_cast<std::int64_t>(r.at(pivot_of_col[c], fc)));
    }
    return k;
}

FieldMatrix column_basis(const FieldMatrix& m) {
    FieldMatrix r = row_reduce(m);
    std::vector<std::size_t> pivot_cols;
    for (std::size_t row = 0; row < r.rows(); ++row) {
        std::size_t c = 0;
        while (c < r.cols() && r.at(row, c) == 0) ++c;
        if (c == r.cols()) break;
        pivot_cols.push_back(c);
    }
    std::vector<std::size_t> all_rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) all_rows[i] = i;
    return m.submatrix(all_rows, pivot_cols);
}

FieldMatrix row_reduce(FieldMatrix m) {
    std::vector<std::uint64_t> work(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) work[r * m.cols() + c] = m.at(r, c);
    eliminate(work, m.rows(), m.cols(), m.modulus(), true);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            m.set(r, c, static_cast<std::int64_t>(work[r * m.cols() + c]));
    return m;
}

FieldMatrix canonical_row_basis(const FieldMatrix& m) {
    FieldMatrix r = row_reduce(m);
    std::size_t nonzero = 0;
    for (std::size_t row = 0; row < r.rows(); ++row) {
        bool any = false;
        for (std::size_t c = 0; c < r.cols(); ++c)
            if (r.at(row, c) != 0) { any = true; break; }
        if (any) ++nonzero;
    }
    std::vector<std::size_t> keep(nonzero);
    for (std::size_t i = 0; i < nonzero; ++i) keep[i] = i;
    std::vector<std::size_t> all_cols(r.cols());
    for (std::size_t c = 0; c < r.cols(); ++c) all_cols[c] = c;
    return r.submatrix(keep, all_cols);
}

}  // namespace rampss::gf
