#include "doctest.h"
#include "shephard/tiling.hpp"

#include <map>
#include <random>

using namespace shephard;

namespace {

std::map<std::pair<Index, int>, long long> net_counts(CayleyStore& s, const Loop& loop) {
    std::map<std::pair<Index, int>, long long> net;
    Index v = loop.start;
    for (int x : loop.letters) {
        Index u = s.neighbor(v, x);
        if (x == kA) net[{v, 0}] += 1;
        if (x == kAInv) net[{u, 0}] -= 1;
        if (x == kC) net[{v, 1}] += 1;
        if (x == kCInv) net[{u, 1}] -= 1;
        v = u;
    }
    for (auto it = net.begin(); it != net.end();) it = it->second == 0 ? net.erase(it) : std::next(it);
    return net;
}

std::map<std::pair<Index, int>, long long> boundary(CayleyStore& s, const FillResult& f) {
    std::map<std::pair<Index, int>, long long> out;
    for (auto [face, coef] : f.coefficients)
        for (EdgeRef e : s.face_edges(face)) out[{e.tail, e.kind}] += coef;
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

Loop closed_random_loop(CayleyStore& s, std::mt19937& rng, int len) {
    Loop loop;
    Index v = 0;
    for (int i = 0; i < len; ++i) {
        int x = static_cast<int>(rng() % 4);
        loop.letters.push_back(x);
        v = s.neighbor(v, x);
    }
    std::vector<int> back = s.section_letters(v);
    for (auto it = back.rbegin(); it != back.rend(); ++it) loop.letters.push_back(inverse_letter(*it));
    return loop;
}

}  // namespace

TEST_CASE("tiling balls are disks with the expected vertex figure") {
    for (auto t : {std::array<int, 3>{3, 3, 3}, {2, 4, 4}, {2, 3, 6}, {4, 3, 4}, {2, 3, 7}, {3, 3, 4}, {2, 4, 5}, {6, 3, 2}}) {
        TilingBall b = build_tiling_ball(triangle_group(t[0], t[1], t[2]), 7);
        CAPTURE(t[0]);
        CAPTURE(t[1]);
        CAPTURE(t[2]);
        CHECK(b.euler_characteristic_complete() == 1);
        long long interior = b.check_vertex_figures();
        CHECK(interior > 0);
    }
}

TEST_CASE("face winding: single face, empty loop, figure eight") {
    for (auto t : {std::array<int, 3>{3, 3, 3}, {2, 3, 7}, {4, 3, 4}}) {
        const TriangleGroup& g = triangle_group(t[0], t[1], t[2]);
        TilingBall b = build_tiling_ball(g, 8);
        CayleyStore& s = *b.store;
        Loop q;
        for (int i = 0; i < g.q; ++i) {
            q.letters.push_back(kA);
            q.letters.push_back(kC);
        }
        FillResult f = face_winding(b, q);
        REQUIRE(f.certified);
        CHECK(f.coefficients.size() == 1);
        CHECK(f.coefficients.begin()->first == s.face_of(0, FaceType::Q));
        CHECK(f.coefficients.begin()->second == 1);
        CHECK(f.n_q == 1);

        FillResult empty = face_winding(b, Loop{});
        CHECK(empty.certified);
        CHECK(empty.coefficients.empty());

        Loop eight = q;
        for (int i = 0; i < g.q; ++i) {
            eight.letters.push_back(kAInv);
            eight.letters.push_back(kCInv);
        }
        FillResult e = face_winding(b, eight);
        REQUIRE(e.certified);
        CHECK(e.coefficients.size() == 2);
        CHECK(e.coefficients[s.face_of(0, FaceType::Q)] == 1);
        CHECK(e.coefficients[s.face_of(s.neighbor(0, kAInv), FaceType::Q)] == -1);
        CHECK(e.n_q == 0);
    }
}

TEST_CASE("fillings are valid 2-chains and agree between tube patches and a big ball") {
    std::mt19937 rng(3);
    for (auto t : {std::array<int, 3>{3, 3, 3}, {2, 4, 4}, {2, 3, 7}, {4, 3, 4}, {2, 4, 5}}) {
        const TriangleGroup& g = triangle_group(t[0], t[1], t[2]);
        TilingBall b = build_tiling_ball(g, 14, 2000000);
        CayleyStore& s = *b.store;
        for (int trial = 0; trial < 25; ++trial) {
            Loop loop = closed_random_loop(s, rng, 1 + static_cast<int>(rng() % 8));
            FillResult tube = s.fill(loop);
            REQUIRE(tube.certified);
            CHECK(boundary(s, tube) == net_counts(s, loop));
            FillResult ball = face_winding(b, loop);
            REQUIRE(ball.certified);
            CHECK(ball.coefficients == tube.coefficients);
        }
    }
}

TEST_CASE("relator loops have the expected per-type sums") {
    const TriangleGroup& g = triangle_group(2, 3, 7);
    CayleyStore s(g);
    Loop ap{0, std::vector<int>(2, kA)};
    FillResult f = s.fill(ap);
    CHECK(f.n_p == 1);
    CHECK(f.n_q == 0);
    Loop cr{0, std::vector<int>(7, kCInv)};
    f = s.fill(cr);
    CHECK(f.n_r == -1);
    // (ca)^q is a conjugate of the basic Q loop
    Loop ca;
    for (int i = 0; i < 3; ++i) {
        ca.letters.push_back(kC);
        ca.letters.push_back(kA);
    }
    f = s.fill(ca);
    CHECK(f.n_q == 1);
    CHECK(f.n_p == 0);
    CHECK(f.n_r == 0);
}
