#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Exact arithmetic and dense linear algebra over prime fields GF(p).
// p is a runtime parameter; only integers are ever used, no floating point.

namespace rampss::gf {

struct BadModulus : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ModulusMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ZeroInverse : std::domain_error {
    using std::domain_error::domain_error;
};
struct Singular : std::domain_error {
    using std::domain_error::domain_error;
};

bool is_prime(std::uint64_t n);

// Throws BadModulus unless p is prime (trial division; desk-scale p).
void require_prime(std::uint64_t p);

// Scalar helpers on fully reduced residues in [0, p).
std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t neg_mod(std::uint64_t a, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);  // ZeroInverse when a = 0
// Reduces an arbitrary signed integer into [0, p).
std::uint64_t reduce_mod(std::int64_t a, std::uint64_t p);

class FieldElement {
public:
    FieldElement(std::int64_t value, std::uint64_t modulus)
        : p_(checked_modulus(modulus)), value_(reduce_mod(value, p_)) {}

    std::uint64_t value() const { return value_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return value_ == 0; }

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        same_modulus(a, b);
        return FieldElement(a.p_, add_mod(a.value_, b.value_, a.p_), raw{});
    }
    friend FieldElement operator-(FieldElement a, FieldElement b) {
        same_modulus(a, b);
        return FieldElement(a.p_, sub_mod(a.value_, b.value_, a.p_), raw{});
    }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        same_modulus(a, b);
        return FieldElement(a.p_, mul_mod(a.value_, b.value_, a.p_), raw{});
    }
    friend FieldElement operator/(FieldElement a, FieldElement b) {
        same_modulus(a, b);
        return FieldElement(a.p_, mul_mod(a.value_, inv_mod(b.value_, a.p_), a.p_), raw{});
    }
    FieldElement operator-() const { return FieldElement(p_, neg_mod(value_, p_), raw{}); }
    friend bool operator==(FieldElement a, FieldElement b) {
        same_modulus(a, b);
        return a.value_ == b.value_;
    }

private:
    struct raw {};
    FieldElement(std::uint64_t p, std::uint64_t reduced, raw) : p_(p), value_(reduced) {}
    static std::uint64_t checked_modulus(std::uint64_t p) {
        require_prime(p);
        return p;
    }
    static void same_modulus(FieldElement a, FieldElement b) {
        if (a.p_ != b.p_)
            throw ModulusMismatch("field elements have different moduli: " +
                                  std::to_string(a.p_) + " vs " + std::to_string(b.p_));
    }

    std::uint64_t p_;
    std::uint64_t value_;
};

// Multiplicative inverse; ZeroInverse when a = 0.
FieldElement field_inverse(FieldElement a);

// Dense row-major matrix over GF(p). All elimination uses the first
// nonzero pivot in column order, so every result is deterministic.
// Zero-dimensional shapes (0 x k, k x 0) are valid values.
class FieldMatrix {
public:
    FieldMatrix(std::size_t rows, std::size_t cols, std::uint64_t p);

    static FieldMatrix identity(std::size_t n, std::uint64_t p);
    // Rows given as signed integers; each entry reduced mod p.
    static FieldMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                                 std::uint64_t p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint64_t modulus() const { return p_; }

    std::uint64_t at(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::int64_t value) {
        v_[r * cols_ + c] = reduce_mod(value, p_);
    }
    FieldElement element(std::size_t r, std::size_t c) const;

    FieldMatrix transpose() const;
    FieldMatrix submatrix(std::span<const std::size_t> row_idx,
                          std::span<const std::size_t> col_idx) const;
    friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
    friend bool operator==(const FieldMatrix& a, const FieldMatrix& b);

    std::size_t rank() const;
    FieldElement det() const;            // square only
    FieldMatrix inverse() const;         // Singular when rank < dimension

private:
    std::size_t rows_, cols_;
    std::uint64_t p_;
    std::vector<std::uint64_t> v_;
};

FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix block_diag(const FieldMatrix& a, const FieldMatrix& b);

// Any x with Mx = b; free variables are set to 0 in pivot order.
// nullopt when b is outside the column space.
std::optional<std::vector<std::uint64_t>> solve_linear(const FieldMatrix& m,
                                                       std::span<const std::uint64_t> b);

// Columns form a basis of {x : Mx = 0}; deterministic (one column per free variable).
FieldMatrix kernel_basis(const FieldMatrix& m);

// The first maximal independent subset of columns, in column order.
FieldMatrix column_basis(const FieldMatrix& m);

// Reduced row echelon form; canonical_row_basis drops the zero rows,
// giving the unique monic basis of the row space.
FieldMatrix row_reduce(FieldMatrix m);
FieldMatrix canonical_row_basis(const FieldMatrix& m);

}  // namespace rampss::gf
