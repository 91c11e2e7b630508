#include "doctest.h"
#include "shephard/complex.hpp"
#include "shephard/errors.hpp"
#include "shephard/finite_group.hpp"

#include <array>

#include <set>

using namespace shephard;

namespace {

std::vector<std::vector<int>> cycle_graph(int n) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        adj[static_cast<size_t>(i)].push_back((i + 1) % n);
        adj[static_cast<size_t>((i + 1) % n)].push_back(i);
    }
    return adj;
}

}  // namespace

TEST_CASE("girth search on small graphs") {
    auto c6 = girth_within_ball(cycle_graph(6));
    REQUIRE(c6.girth);
    CHECK(*c6.girth == 6);
    CHECK(c6.cycle.size() == 6);
    // capped below the girth: nothing visible
    CHECK_FALSE(girth_within_ball(cycle_graph(6), 5).girth);

    std::vector<std::vector<int>> tree{{1, 2}, {0, 3}, {0}, {1}};
    CHECK_FALSE(girth_within_ball(tree).girth);

    // two triangles sharing an edge, plus a pendant 5-cycle
    std::vector<std::vector<int>> theta{{1, 2, 3}, {0, 2}, {0, 1, 3}, {0, 2}};
    CHECK(*girth_within_ball(theta).girth == 3);

    // K_{3,3}: girth 4, and the witness really is a cycle
    std::vector<std::vector<int>> k33(6);
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j) k33[size_t(i)].push_back(j), k33[size_t(j)].push_back(i);
    auto g = girth_within_ball(k33);
    REQUIRE(*g.girth == 4);
    for (size_t i = 0; i < g.cycle.size(); ++i) {
        int a = g.cycle[i], b = g.cycle[(i + 1) % g.cycle.size()];
        const auto& adj = k33[size_t(a)];
        CHECK(std::find(adj.begin(), adj.end(), b) != adj.end());
    }
}

TEST_CASE("finite coset graph is the full incidence graph") {
    // Sh(3,3,3) has order 24: 8 + 8 cosets and one edge per element
    auto ball = build_theta_hat_ball(3, 3, 3, 100);
    CHECK(ball.finite_group);
    CHECK(ball.complete);
    CHECK(ball.vertices.size() == 16);
    CHECK(ball.edges.size() == 24);
    CHECK(ball.is_bipartite());
    CHECK(ball.check_interior_valences() == 16);
    // a finite rank-2 geometry: girth is exactly 2q
    CHECK(*girth_within_ball(ball).girth == 6);

    // unequal labels: |G|/p + |G|/r cosets, against the closure order
    for (auto [p, q, r] : {std::array{3, 4, 2}, std::array{4, 4, 2}, std::array{3, 4, 3}}) {
        const auto n = FiniteShephardGroup(p, q, r).order();
        auto b = build_theta_hat_ball(p, q, r, 1000);
        CHECK(b.vertices.size() == n / size_t(p) + n / size_t(r));
        CHECK(b.edges.size() == n);
        CHECK(*girth_within_ball(b).girth == 2 * q);
    }
}

TEST_CASE("central coset graph ball in the euclidean regime") {
    auto ball = build_theta_hat_ball(3, 6, 3, 12);
    CHECK_FALSE(ball.finite_group);
    CHECK_FALSE(ball.complete);
    CHECK(ball.is_bipartite());
    CHECK(ball.check_interior_valences() > 0);
    auto g = girth_within_ball(ball, 11);
    CHECK_FALSE(g.girth);  // no cycle shorter than 2q = 12
    // every vertex but the outermost layer has full valence, and labels are unique
    std::set<std::string> labels;
    for (const auto& v : ball.vertices) labels.insert(v.label);
    CHECK(labels.size() == ball.vertices.size());
}

TEST_CASE("coset geometry has q-gon faces") {
    auto D = build_coset_geometry_ball(3, 6, 3, 3);
    CHECK(D.is_bipartite());
    REQUIRE_FALSE(D.faces.empty());
    for (size_t i = 0; i < D.faces.size(); ++i) CHECK(D.faces[i].size() == 6);
    CHECK(std::count(D.face_complete.begin(), D.face_complete.end(), true) > 0);
    // D itself has short cycles: the faces
    CHECK(*girth_within_ball(D).girth == 6);
}

TEST_CASE("forgetting the central coordinate is a local injection") {
    auto th = build_theta_hat_ball(3, 6, 3, 6);
    auto D = build_coset_geometry_ball(3, 6, 3, 6);
    auto qc = check_center_quotient(th, D);
    CHECK(qc.morphism);
    CHECK(qc.locally_injective);
    CHECK(qc.vertices_mapped > 0);

    auto th2 = build_theta_hat_ball(4, 4, 4, 4);
    auto D2 = build_coset_geometry_ball(4, 4, 4, 4);
    auto qc2 = check_center_quotient(th2, D2);
    CHECK(qc2.morphism);
    CHECK(qc2.locally_injective);
}

TEST_CASE("fundamental domain of small graphs") {
    auto edge = parse_graph("vertex a 3; vertex b 3; edge a b 3");
    auto fd = build_fundamental_domain(edge);
    CHECK(fd.spherical.size() == 4);
    CHECK(fd.cells.size() == 9);  // pairs lower ⊆ upper among four sets
    CHECK(fd.dimension() == 2);
    CHECK(fd.euler_characteristic() == 1);
    bool found = false;
    for (const auto& c : fd.cells)
        if (c.dimension == 2) {
            found = true;
            CHECK(c.moussong_angles[0] == Rational(2, 3));
            CHECK(c.moussong_angles[2] == Rational(1, 3));
            Rational sum = 0;
            for (const auto& a : c.moussong_angles) sum += a;
            CHECK(sum == 2);  // a euclidean quadrilateral
        }
    CHECK(found);

    auto pent = parse_graph(
        "vertex a 3; vertex b 3; vertex c 3; vertex d 3; vertex e 3;"
        "edge a b 4; edge b c 4; edge c d 4; edge d e 4; edge a e 4");
    auto fp = build_fundamental_domain(pent);
    CHECK(fp.dimension() == 2);
    CHECK(fp.spherical.size() == 11);
    CHECK(fp.euler_characteristic() == 1);  // a cone

    CHECK_THROWS_AS(build_fundamental_domain(parse_graph("vertex a inf; vertex b 3; edge a b 4")), Inapplicable);
}

TEST_CASE("certificate report") {
    auto pent = parse_graph(
        "vertex a 3; vertex b 3; vertex c 3; vertex d 3; vertex e 3;"
        "edge a b 4; edge b c 4; edge c d 4; edge d e 4; edge a e 4");
    RadiusPolicy pol;
    pol.fixed = 6;
    auto rep = cat0_report(pent, pol);
    CHECK(rep.two_dimensional);
    CHECK(rep.verdict == CertificateVerdict::certified_at_radius);
    CHECK(rep.edges.size() == 5);
    for (const auto& e : rep.edges) {
        CHECK(e.satisfied);
        CHECK(e.required_girth == 8);
    }
    CHECK_FALSE(rep.assumptions.empty());

    // a 2-labelled triangle with finite edges everywhere is spherical, so not 2-dimensional
    auto tri = parse_graph("vertex a 2; vertex b 2; vertex c 2; edge a b 2; edge b c 2; edge a c 2");
    CHECK(cat0_report(tri).verdict == CertificateVerdict::inapplicable);

    // finite edge groups: the full complex, measured girth 2m
    auto fin = parse_graph("vertex a 3; vertex b 3; edge a b 3");
    auto rf = cat0_report(fin);
    REQUIRE(rf.edges.size() == 1);
    CHECK(rf.edges[0].finite_group);
    CHECK(*rf.edges[0].shortest_cycle == 6);
}

TEST_CASE("budget cuts the radius back to a complete layer") {
    CHECK_THROWS_AS(build_theta_hat_ball(3, 8, 3, 20, 20000), BudgetExceeded);
    auto b = build_theta_hat_ball(3, 8, 3, 20, 20000, nullptr, true);
    CHECK(b.budget_limited);
    CHECK(b.radius < 20);
    CHECK(b.is_bipartite());
    CHECK(b.check_interior_valences() > 0);
    for (const auto& [x, y] : b.edges) {
        CHECK(x < int(b.vertices.size()));
        CHECK(y < int(b.vertices.size()));
    }
    // girth 2q is already visible at the reduced radius
    CHECK(*girth_within_ball(b, 16).girth == 16);
}
