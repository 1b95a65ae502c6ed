#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rampss/gf.hpp"

using namespace rampss;
using gf::FieldElement;
using gf::FieldMatrix;

namespace {

// Independent oracle: scan for the inverse instead of using extended Euclid.
std::uint64_t scan_inverse(std::uint64_t a, std::uint64_t p) {
    for (std::uint64_t b = 1; b < p; ++b)
        if (a * b % p == 1) return b;
    throw std::logic_error("no inverse found");
}

FieldMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c,
                          std::uint64_t p) {
    FieldMatrix m(r, c, p);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m.set(i, j, static_cast<std::int64_t>(rng() % p));
    return m;
}

}  // namespace

TEST_CASE("primality validation") {
    CHECK(gf::is_prime(2));
    CHECK(gf::is_prime(17));
    CHECK(gf::is_prime(101));
    CHECK(!gf::is_prime(1));
    CHECK(!gf::is_prime(15));
    CHECK_THROWS_AS(FieldElement(1, 15), gf::BadModulus);
    CHECK_THROWS_AS(FieldMatrix(2, 2, 1), gf::BadModulus);
}

TEST_CASE("field element arithmetic") {
    FieldElement a(5, 17), b(13, 17);
    CHECK((a + b).value() == 1);
    CHECK((a - b).value() == 9);
    CHECK((a * b).value() == 65 % 17);
    CHECK((-a).value() == 12);
    CHECK(FieldElement(-1, 17).value() == 16);
    CHECK_THROWS_AS(a + FieldElement(1, 5), gf::ModulusMismatch);
}

TEST_CASE("field inverse examples") {
    CHECK(gf::field_inverse(FieldElement(1, 17)).value() == 1);
    CHECK(gf::field_inverse(FieldElement(5, 17)).value() == 7);
    CHECK(gf::field_inverse(FieldElement(5, 17)).value() == scan_inverse(5, 17));
    CHECK(gf::field_inverse(FieldElement(2, 3)).value() == 2);
    CHECK_THROWS_AS(gf::field_inverse(FieldElement(0, 17)), gf::ZeroInverse);
}

TEST_CASE("inverse is an involution, exhaustively") {
    for (std::uint64_t p : {2ull, 3ull, 5ull, 17ull})
        for (std::uint64_t a = 1; a < p; ++a) {
            std::uint64_t inv = gf::inv_mod(a, p);
            CHECK(inv == scan_inverse(a, p));
            CHECK(gf::inv_mod(inv, p) == a);
            CHECK(gf::mul_mod(a, inv, p) == 1);
        }
}

TEST_CASE("rank examples") {
    CHECK(FieldMatrix::identity(2, 3).rank() == 2);
    CHECK(FieldMatrix::from_rows({{1, 1}, {2, 2}}, 3).rank() == 1);
    CHECK(FieldMatrix::from_rows({{1, 1}, {1, -1}}, 2).rank() == 1);  // -1 = 1 mod 2
    CHECK(FieldMatrix(0, 4, 5).rank() == 0);
    CHECK(FieldMatrix(4, 0, 5).rank() == 0);
}

TEST_CASE("rank equals rank of transpose") {
    std::mt19937_64 rng(11);
    for (std::uint64_t p : {2ull, 3ull, 5ull, 17ull})
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
            FieldMatrix m = random_matrix(rng, r, c, p);
            CHECK(m.rank() == m.transpose().rank());
        }
}

TEST_CASE("matrix inverse examples") {
    auto id = FieldMatrix::identity(3, 5);
    CHECK(id.inverse() == id);

    auto m = FieldMatrix::from_rows({{1, 1}, {1, -1}}, 3);
    auto inv = m.inverse();
    CHECK(inv == FieldMatrix::from_rows({{2, 2}, {2, 1}}, 3));
    CHECK(m * inv == FieldMatrix::identity(2, 3));

    CHECK_THROWS_AS(FieldMatrix::from_rows({{1, 1}, {2, 2}}, 5).inverse(), gf::Singular);
}

TEST_CASE("inverse times original is the identity") {
    std::mt19937_64 rng(12);
    for (std::uint64_t p : {2ull, 5ull, 17ull})
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t n = 1 + rng() % 6;
            FieldMatrix m = random_matrix(rng, n, n, p);
            if (m.det().is_zero()) continue;
            CHECK(m.inverse() * m == FieldMatrix::identity(n, p));
        }
}

TEST_CASE("determinant examples") {
    CHECK(FieldMatrix::identity(1, 7).det().value() == 1);
    CHECK(FieldMatrix::identity(4, 7).det().value() == 1);
    CHECK(FieldMatrix::from_rows({{1, 1}, {1, -1}}, 17).det().value() == 15);
    CHECK(FieldMatrix(0, 0, 5).det().value() == 1);
}

TEST_CASE("determinant of a 3x3 Cauchy-type matrix matches the product formula") {
    // Entries 1/(x_i + y_j) for x = (1,2,3), y = (0,4,5) over GF(17); the
    // closed form is prod_{i<j}(x_i-x_j)(y_i-y_j) / prod_{ij}(x_i+y_j).
    std::uint64_t p = 17;
    std::vector<std::uint64_t> xs{1, 2, 3}, ys{0, 4, 5};
    FieldMatrix m(3, 3, p);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m.set(i, j, static_cast<std::int64_t>(scan_inverse(xs[i] + ys[j], p)));
    std::uint64_t num = 1, den = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            num = num * gf::sub_mod(xs[i], xs[j], p) % p;
            num = num * gf::sub_mod(ys[i], ys[j], p) % p;
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) den = den * ((xs[i] + ys[j]) % p) % p;
    std::uint64_t expected = num * scan_inverse(den, p) % p;
    CHECK(m.det().value() == expected);
}

TEST_CASE("det nonzero iff full rank, exhaustively over 2x2") {
    for (std::uint64_t p : {2ull, 3ull}) {
        for (std::uint64_t bits = 0; bits < p * p * p * p; ++bits) {
            std::uint64_t v = bits;
            FieldMatrix m(2, 2, p);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) {
                    m.set(r, c, static_cast<std::int64_t>(v % p));
                    v /= p;
                }
            CHECK((m.det().value() != 0) == (m.rank() == 2));
        }
    }
}

TEST_CASE("solve_linear examples") {
    auto id = FieldMatrix::identity(3, 7);
    std::vector<std::uint64_t> b{2, 0, 5};
    auto x = gf::solve_linear(id, b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    auto inconsistent = FieldMatrix::from_rows({{1}, {1}}, 3);
    std::vector<std::uint64_t> b2{1, 2};
    CHECK(!gf::solve_linear(inconsistent, b2).has_value());
}

TEST_CASE("solve_linear recovers the recombination coefficients") {
    // Columns (1, x, x^2, x^3) at x = 3, 6, 15 over GF(17); the unique
    // solution of G_A a = (0,5,0,0) is the recombination (7,9,1).
    std::uint64_t p = 17;
    FieldMatrix ga(4, 3, p);
    std::vector<std::uint64_t> pts{3, 6, 15};
    for (int c = 0; c < 3; ++c) {
        std::uint64_t pw = 1;
        for (int r = 0; r < 4; ++r) {
            ga.set(r, c, static_cast<std::int64_t>(pw));
            pw = pw * pts[c] % p;
        }
    }
    std::vector<std::uint64_t> target{0, 5, 0, 0};
    auto alpha = gf::solve_linear(ga, target);
    REQUIRE(alpha.has_value());
    CHECK(*alpha == std::vector<std::uint64_t>{7, 9, 1});
}

TEST_CASE("solve_linear solutions satisfy the system") {
    std::mt19937_64 rng(13);
    for (std::uint64_t p : {2ull, 3ull, 17ull})
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
            FieldMatrix m = random_matrix(rng, r, c, p);
            std::vector<std::uint64_t> b(r);
            for (auto& v : b) v = rng() % p;
            auto x = gf::solve_linear(m, b);
            if (!x) continue;
            for (std::size_t i = 0; i < r; ++i) {
                std::uint64_t acc = 0;
                for (std::size_t j = 0; j < c; ++j)
                    acc = gf::add_mod(acc, gf::mul_mod((*x)[j], m.at(i, j), p), p);
                CHECK(acc == b[i]);
            }
        }
}

TEST_CASE("kernel basis spans the null space") {
    std::mt19937_64 rng(14);
    for (std::uint64_t p : {2ull, 5ull})
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
            FieldMatrix m = random_matrix(rng, r, c, p);
            FieldMatrix k = gf::kernel_basis(m);
            CHECK(k.cols() == c - m.rank());
            if (k.cols() > 0) {
                FieldMatrix prod = m * k;
                CHECK(prod == FieldMatrix(r, k.cols(), p));
            }
            CHECK(k.rank() == k.cols());
        }
}

TEST_CASE("column basis and canonical row basis") {
    auto m = FieldMatrix::from_rows({{1, 2, 0}, {2, 4, 0}, {0, 0, 0}}, 5);
    FieldMatrix cb = gf::column_basis(m);
    CHECK(cb.cols() == 1);
    CHECK(cb.rank() == 1);

    FieldMatrix rb = gf::canonical_row_basis(m);
    CHECK(rb.rows() == 1);
    CHECK(rb.at(0, 0) == 1);  // monic
    CHECK(rb.at(0, 1) == 2);
    // Canonical form is stable under row operations on the input.
    auto m2 = FieldMatrix::from_rows({{2, 4, 0}, {1, 2, 0}}, 5);
    CHECK(gf::canonical_row_basis(m2) == rb);
}

TEST_CASE("submatrix, hstack, block_diag") {
    auto m = FieldMatrix::from_rows({{1, 2, 3}, {4, 5, 6}}, 7);
    std::vector<std::size_t> rows{1}, cols{0, 2};
    auto s = m.submatrix(rows, cols);
    CHECK(s.rows() == 1);
    CHECK(s.at(0, 0) == 4);
    CHECK(s.at(0, 1) == 6);

    auto h = gf::hstack(m, FieldMatrix::identity(2, 7));
    CHECK(h.cols() == 5);
    CHECK(h.at(1, 4) == 1);

    auto b = gf::block_diag(FieldMatrix::identity(1, 7), FieldMatrix::identity(2, 7));
    CHECK(b.rows() == 3);
    CHECK(b.at(0, 0) == 1);
    CHECK(b.at(1, 1) == 1);
    CHECK(b.at(0, 1) == 0);
}
