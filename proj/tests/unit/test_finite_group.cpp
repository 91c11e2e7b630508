#include "doctest.h"
#include "shephard/errors.hpp"
#include "shephard/finite_group.hpp"

using namespace shephard;

TEST_CASE("finite dihedral Shephard groups: closure agrees with coset enumeration") {
    struct Case {
        int p, q, r;
        size_t order;
    };
    // 24 and 18 are the two acceptance fixtures; the Coxeter cases double as sanity checks
    for (Case c : {Case{3, 3, 3, 24}, Case{2, 4, 3, 18}, Case{2, 3, 2, 6}, Case{2, 5, 2, 10}, Case{2, 2, 5, 10},
                   Case{4, 3, 4, 96}, Case{3, 4, 3, 72}, Case{5, 3, 5, 600}, Case{2, 6, 3, 48}}) {
        CAPTURE(c.p);
        CAPTURE(c.q);
        CAPTURE(c.r);
        FiniteShephardGroup g(c.p, c.q, c.r);
        CHECK(g.relators_hold());
        size_t tc = todd_coxeter_index(2, shephard_relators(c.p, c.q, c.r), {});
        CHECK(g.order() == tc);
        CHECK(g.order() == c.order);
        // closed form 8 / (q (h - 1)^2); q = 2 is the direct product
        Rational hm1 = Rational(1, c.p) + Rational(2, c.q) + Rational(1, c.r) - 1;
        Rational expected = c.q == 2 ? Rational(c.p * c.r) : Rational(8) / (Rational(c.q) * hm1 * hm1);
        CHECK(expected == Rational(static_cast<long long>(c.order)));
    }
}

TEST_CASE("coset enumeration on a Coxeter presentation") {
    // <a, b | a^2, b^2, (ab)^5> has order 10; index of <a> is 5
    std::vector<std::vector<int>> rels{{0, 0}, {2, 2}, {0, 2, 0, 2, 0, 2, 0, 2, 0, 2}};
    CHECK(todd_coxeter_index(2, rels, {}) == 10);
    CHECK(todd_coxeter_index(2, rels, {{0}}) == 5);
}

TEST_CASE("closure rejects infinite triples") {
    CHECK_THROWS_AS(FiniteShephardGroup(3, 6, 3), Inapplicable);
}
