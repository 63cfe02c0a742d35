#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "diagext/matrix.hpp"

using namespace diagext;

namespace {

Matrix random_matrix(const Field& F, std::size_t r, std::size_t c, std::mt19937& rng) {
    std::uniform_int_distribution<int> val(-4, 4);
    std::uniform_int_distribution<int> keep(0, 2);
    Matrix m(F, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (keep(rng) != 0) m.set(i, j, F.from_long(val(rng)));
    return m;
}

} // namespace

TEST_CASE("kernel_basis on fixed examples") {
    Field Q = Field::rationals();

    Matrix id3 = Matrix::identity(Q, 3);
    CHECK(kernel_basis(id3).cols() == 0);

    Matrix z23 = Matrix::zero(Q, 2, 3);
    Matrix k = kernel_basis(z23);
    CHECK(k.cols() == 3);
    CHECK((z23 * k).is_zero());

    Matrix a = Matrix::from_rows(Q, {{1, 2}, {2, 4}});
    Matrix ka = kernel_basis(a);
    REQUIRE(ka.cols() == 1);
    CHECK(ka.get(0, 0) == Q.from_long(-2));
    CHECK(ka.get(1, 0) == Q.from_long(1));
    CHECK((a * ka).is_zero());
}

TEST_CASE("rank on fixed examples") {
    Field Q = Field::rationals();
    CHECK(rank(Matrix::zero(Q, 4, 3)) == 0);
    CHECK(rank(Matrix::identity(Q, 5)) == 5);
    CHECK(rank(Matrix::from_rows(Q, {{1, 2}, {2, 4}})) == 1);
    CHECK(is_invertible(Matrix::from_rows(Q, {{1, 2}, {3, 4}})));
    CHECK_FALSE(is_invertible(Matrix::from_rows(Q, {{1, 2}, {2, 4}})));
}

TEST_CASE("solve on fixed examples") {
    Field Q = Field::rationals();

    Matrix b = Matrix::from_rows(Q, {{3, 1}, {0, -2}});
    auto x = solve(Matrix::identity(Q, 2), b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    auto none = solve(Matrix::zero(Q, 2, 2), Matrix::from_rows(Q, {{1, 0}, {0, 0}}));
    CHECK_FALSE(none.has_value());

    Matrix a = Matrix::from_rows(Q, {{1}, {1}});
    Matrix rhs = Matrix::from_rows(Q, {{2}, {2}});
    auto s = solve(a, rhs);
    REQUIRE(s.has_value());
    CHECK(s->get(0, 0) == Q.from_long(2));
}

TEST_CASE("rank-nullity and solve consistency over random matrices") {
    std::mt19937 rng(20240517);
    for (Field F : {Field::rationals(), Field::prime(5), Field::prime(2)}) {
        for (int trial = 0; trial < 40; ++trial) {
            std::uniform_int_distribution<std::size_t> dim(1, 7);
            std::size_t r = dim(rng), c = dim(rng);
            Matrix A = random_matrix(F, r, c, rng);
            CHECK(rank(A) + kernel_basis(A).cols() == c);
            CHECK((A * kernel_basis(A)).is_zero());

            Matrix X = random_matrix(F, c, 2, rng);
            Matrix B = A * X;
            auto S = solve(A, B);
            REQUIRE(S.has_value());
            CHECK((A * *S) == B);

            Matrix B2 = random_matrix(F, r, 1, rng);
            auto S2 = solve(A, B2);
            if (S2) {
                CHECK((A * *S2) == B2);
            } else {
                CHECK(rank(A.hstack(B2)) > rank(A));
            }
        }
    }
}

TEST_CASE("rref is idempotent and preserves row space") {
    std::mt19937 rng(7);
    Field Q = Field::rationals();
    for (int trial = 0; trial < 20; ++trial) {
        Matrix A = random_matrix(Q, 5, 6, rng);
        Matrix R = A.rref();
        CHECK(R.rref() == R);
        CHECK(rank(A.vstack(R)) == rank(A));
    }
}

TEST_CASE("fraction-free elimination handles rational input exactly") {
    Field Q = Field::rationals();
    Matrix A(Q, 2, 2);
    A.set(0, 0, Q.from_fraction(1, 3));
    A.set(0, 1, Q.from_fraction(2, 7));
    A.set(1, 0, Q.from_fraction(5, 2));
    A.set(1, 1, Q.from_fraction(15, 7));
    // second row = 15/2 * first row: rank 1
    CHECK(rank(A) == 1);
    Matrix K = kernel_basis(A);
    REQUIRE(K.cols() == 1);
    CHECK((A * K).is_zero());
}

TEST_CASE("left-sided helpers") {
    Field F = Field::prime(5);
    std::mt19937 rng(99);
    Matrix A = random_matrix(F, 4, 6, rng);
    Matrix L = left_kernel_rows(A);
    CHECK((L * A).is_zero());
    CHECK(L.rows() + rank(A) == A.rows());

    Matrix B = random_matrix(F, 2, 4, rng) * A;
    auto X = solve_left(A, B);
    REQUIRE(X.has_value());
    CHECK((*X * A) == B);
}

TEST_CASE("inverse") {
    Field Q = Field::rationals();
    Matrix A = Matrix::from_rows(Q, {{2, 1}, {7, 4}});
    Matrix Ai = inverse(A);
    CHECK((A * Ai) == Matrix::identity(Q, 2));
    CHECK((Ai * A) == Matrix::identity(Q, 2));
}

TEST_CASE("row space complement") {
    Field Q = Field::rationals();
    Matrix A = Matrix::from_rows(Q, {{1, 1, 0}, {0, 0, 0}});
    Matrix C = row_space_complement(A);
    REQUIRE(C.rows() == 2);
    CHECK(rank(A.vstack(C)) == 3);
    CHECK(in_row_space(A, Matrix::from_rows(Q, {{2, 2, 0}})));
    CHECK_FALSE(in_row_space(A, Matrix::from_rows(Q, {{1, 0, 0}})));
}
