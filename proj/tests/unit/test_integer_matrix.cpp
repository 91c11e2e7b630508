#include "doctest.h"
#include "shephard/integer_matrix.hpp"

#include <random>

using namespace shephard;

namespace {

bool is_diagonal_chain(const IntegerMatrix& S) {
    Integer prev = 1;
    bool zero_seen = false;
    for (size_t i = 0; i < S.rows(); ++i)
        for (size_t j = 0; j < S.cols(); ++j) {
            if (i != j && S(i, j) != 0) return false;
            if (i == j) {
                if (S(i, i) < 0) return false;
                if (S(i, i) == 0) {
                    zero_seen = true;
                    continue;
                }
                if (zero_seen || S(i, i) % prev != 0) return false;
                prev = S(i, i);
            }
        }
    return true;
}

Integer gcd_all(const std::vector<Integer>& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, abs(x));
    return g;
}

}  // namespace

TEST_CASE("smith normal form examples") {
    auto f = smith_normal_form(IntegerMatrix::identity(2));
    CHECK(f.S == IntegerMatrix::identity(2));

    IntegerMatrix m{{2, 0}, {0, 3}};
    f = smith_normal_form(m);
    CHECK(f.S == IntegerMatrix{{1, 0}, {0, 6}});
    CHECK(f.U * m * f.V == f.S);
    CHECK(abs(f.U.determinant()) == 1);
    CHECK(abs(f.V.determinant()) == 1);

    IntegerMatrix d2{{3, 0, 3}, {0, 3, 3}};
    f = smith_normal_form(d2);
    CHECK(f.S == IntegerMatrix{{3, 0, 0}, {0, 3, 0}});
}

TEST_CASE("kernel examples") {
    auto k = kernel_basis(IntegerMatrix{{3, 0, 3}, {0, 3, 3}});
    REQUIRE(k.size() == 1);
    std::vector<Integer> expect{-1, -1, 1};
    std::vector<Integer> neg{1, 1, -1};
    CHECK((k[0] == expect || k[0] == neg));

    CHECK(kernel_basis(IntegerMatrix::identity(3)).empty());

    k = kernel_basis(IntegerMatrix{{2, 0, 3}, {0, 4, 3}});
    REQUIRE(k.size() == 1);
    std::vector<Integer> e2{-6, -3, 4}, n2{6, 3, -4};
    CHECK((k[0] == e2 || k[0] == n2));
}

TEST_CASE("smith and kernel properties on random matrices") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 150; ++trial) {
        size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
        IntegerMatrix m(r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) m(i, j) = static_cast<int>(rng() % 13) - 6;
        auto f = smith_normal_form(m);
        CHECK(f.U * m * f.V == f.S);
        CHECK(is_diagonal_chain(f.S));
        CHECK(abs(f.U.determinant()) == 1);
        CHECK(abs(f.V.determinant()) == 1);
        auto ker = kernel_basis(m);
        CHECK(ker.size() == c - f.rank);
        for (const auto& v : ker) {
            for (const auto& x : m.apply(v)) CHECK(x == 0);
            CHECK(gcd_all(v) == 1);
        }
    }
}
