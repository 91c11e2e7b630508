#include "doctest.h"
#include "shephard/tiling.hpp"
#include "shephard/triangle_group.hpp"

#include <vector>

using namespace shephard;

namespace {

RingMatrix power(const RingMatrix& m, int n) {
    RingMatrix r = RingMatrix::identity(m.field());
    for (int i = 0; i < n; ++i) r = r * m;
    return r;
}

}  // namespace

TEST_CASE("geometry kind follows the sign of 1/p + 1/q + 1/r - 1") {
    CHECK(geometry_kind(3, 3, 3) == GeometryKind::euclidean);
    CHECK(geometry_kind(2, 4, 4) == GeometryKind::euclidean);
    CHECK(geometry_kind(2, 3, 7) == GeometryKind::hyperbolic);
    CHECK(geometry_kind(2, 3, 5) == GeometryKind::spherical);
}

TEST_CASE("generator relations and form preservation hold exactly") {
    for (int p = 2; p <= 8; ++p)
        for (int q = 2; q <= 8; ++q)
            for (int r = 2; r <= 8; r += 3) {
                const TriangleGroup& g = triangle_group(p, q, r);
                const RingMatrix& a = g.gen[kA];
                const RingMatrix& c = g.gen[kC];
                CHECK(power(a, p).is_identity());
                CHECK(power(c, r).is_identity());
                CHECK(power(a * c, q).is_identity());
                // orders are exact, not just divisors
                for (int k = 1; k < p; ++k) CHECK_FALSE(power(a, k).is_identity());
                for (int k = 1; k < q; ++k) CHECK_FALSE(power(a * c, k).is_identity());
                CHECK((a * g.gen[kAInv]).is_identity());
                CHECK((c * g.gen[kCInv]).is_identity());
                CHECK(g.preserves_form(a));
                CHECK(g.preserves_form(c));
            }
}

TEST_CASE("spherical triangle groups close to the expected orders") {
    struct Case {
        int p, q, r;
        size_t order;
    };
    for (Case c : {Case{2, 3, 5, 60}, Case{2, 3, 4, 24}, Case{3, 3, 2, 12}, Case{2, 2, 7, 14}, Case{2, 5, 3, 60}}) {
        TilingBall b = build_tiling_ball(triangle_group(c.p, c.q, c.r), 1);
        CHECK(b.vertices.size() == c.order);
    }
}

TEST_CASE("radius-1 ball of (3,3,3) has five vertices") {
    TilingBall b = build_tiling_ball(triangle_group(3, 3, 3), 1);
    CHECK(b.vertices.size() == 5);
}

TEST_CASE("canonical hashing: each ball element re-derived by an independent product") {
    for (auto t : {std::array<int, 3>{3, 3, 3}, {2, 3, 7}, {4, 3, 4}, {2, 4, 5}}) {
        const TriangleGroup& g = triangle_group(t[0], t[1], t[2]);
        TilingBall b = build_tiling_ball(g, 6);
        for (Index v : b.vertices) {
            // rebuild from reflections: a = r1 r2, c = r2 r3
            RingMatrix m = RingMatrix::identity(g.field.get());
            for (int x : b.store->section_letters(v)) {
                switch (x) {
                    case kA: m = m * g.reflection[0] * g.reflection[1]; break;
                    case kAInv: m = m * g.reflection[1] * g.reflection[0]; break;
                    case kC: m = m * g.reflection[1] * g.reflection[2]; break;
                    case kCInv: m = m * g.reflection[2] * g.reflection[1]; break;
                }
            }
            auto found = b.store->find(m);
            REQUIRE(found.has_value());
            CHECK(*found == v);
        }
    }
}
