#include "doctest.h"
#include "shephard/errors.hpp"
#include "shephard/finite_group.hpp"
#include "shephard/graph.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

using namespace shephard;

namespace {

ExtendedPresentationGraph G(const char* text) { return parse_graph(text); }

VertexSet all_of(const ExtendedPresentationGraph& g) {
    VertexSet s(static_cast<size_t>(g.size()));
    std::iota(s.begin(), s.end(), 0);
    return s;
}

// order of W_S by coset enumeration over the trivial subgroup; 0 if it blows the budget
std::size_t coxeter_order(const ExtendedPresentationGraph& g, const VertexSet& s, std::size_t budget = 200000) {
    std::vector<std::vector<int>> rels;
    const int n = static_cast<int>(s.size());
    for (int i = 0; i < n; ++i) rels.push_back({2 * i, 2 * i});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (int m = g.edge_label(s[static_cast<size_t>(i)], s[static_cast<size_t>(j)])) {
                std::vector<int> w;
                for (int k = 0; k < m; ++k) w.push_back(2 * i), w.push_back(2 * j);
                rels.push_back(w);
            }
    try {
        return todd_coxeter_index(n, rels, {}, budget);
    } catch (const BudgetExceeded&) {
        return 0;
    }
}

ExtendedPresentationGraph triangle(int m1, int m2, int m3, int p = 2) {
    ExtendedPresentationGraph g;
    g.add_vertex("a", p), g.add_vertex("b", p), g.add_vertex("c", p);
    g.add_edge(0, 1, m1), g.add_edge(1, 2, m2), g.add_edge(0, 2, m3);
    return g;
}

ExtendedPresentationGraph cycle(int n, int vlabel, int elabel) {
    ExtendedPresentationGraph g;
    for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i), vlabel);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, elabel);
    return g;
}

ExtendedPresentationGraph random_graph(std::mt19937_64& rng, int n, double density, std::vector<int> labels) {
    ExtendedPresentationGraph g;
    for (int i = 0; i < n; ++i) g.add_vertex("x" + std::to_string(i), 2);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<size_t> pick(0, labels.size() - 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (u(rng) < density) g.add_edge(i, j, labels[pick(rng)]);
    return g;
}

}  // namespace

TEST_CASE("graph parsing") {
    auto g = G("vertex a 3; vertex b 3; edge a b 6");
    REQUIRE(g.size() == 2);
    CHECK(g.vertex(0).label == 3);
    CHECK(g.edge_label(0, 1) == 6);
    CHECK(g.edge_label(1, 0) == 6);

    CHECK_THROWS_WITH_AS(G("vertex a 3; vertex b 4; edge a b 5"), doctest::Contains("odd edge label"), InputError);
    CHECK(G("vertex a 2").size() == 1);

    auto h = G("graph pent # five\nvertex a 3\n  vertex b inf\nedge a b 4\n");
    CHECK(h.name == "pent");
    CHECK_FALSE(h.vertex(1).finite());
    CHECK_FALSE(h.all_vertex_labels_finite());

    CHECK_THROWS_WITH_AS(G("vertex a 3\nvertex b 1"), doctest::Contains("line 2, column 10"), InputError);
    CHECK_THROWS_WITH_AS(G("vertex a 3\nedge a c 4"), doctest::Contains("line 2, column 8"), InputError);
    CHECK_THROWS_WITH_AS(G("vertex a 3; vertex a 3"), doctest::Contains("duplicate vertex"), InputError);
    CHECK_THROWS_WITH_AS(G("vertex a 3; vertex b 3; edge a b 4; edge b a 6"), doctest::Contains("duplicate edge"), InputError);
    CHECK_THROWS_AS(G("vertex a 3; edge a a 4"), InputError);
    CHECK_THROWS_AS(G("vertex a 3; vertex b 3; edge a b inf"), InputError);
    CHECK_THROWS_AS(G("vertex a"), InputError);
    CHECK_THROWS_WITH_AS(G("vertx a 3"), doctest::Contains("unknown statement"), InputError);

    // json round trip, ∞ as "inf"
    auto j = parse_graph(h.to_json());
    CHECK(j.name == "pent");
    CHECK(j.to_text() == h.to_text());
    CHECK(parse_graph(h.to_text()).to_json() == h.to_json());
    CHECK_THROWS_AS(parse_graph("{\"vertices\": [{\"id\": \"a\", \"label\": 1}]}"), InputError);
    CHECK_THROWS_AS(parse_graph("{\"vertices\": [}"), InputError);
}

TEST_CASE("coxeter classes of small subsets") {
    auto one = G("vertex a 2");
    CHECK(classify_coxeter_subset(one, {0}).kind == CoxeterKind::spherical);

    auto t236 = triangle(2, 3, 6);
    auto c = classify_coxeter_subset(t236, all_of(t236));
    CHECK(c.kind == CoxeterKind::affine);
    CHECK(c.minor_signs == std::vector<int>{1, 1, 0});

    auto t235 = triangle(2, 3, 5);
    CHECK(classify_coxeter_subset(t235, all_of(t235)).kind == CoxeterKind::spherical);
    CHECK(coxeter_order(t235, all_of(t235)) == 120);

    CHECK(classify_coxeter_subset(triangle(3, 3, 4), {0, 1, 2}).kind == CoxeterKind::indefinite);
    // non-edge: infinite dihedral
    auto path = G("vertex a 2; vertex b 2; vertex c 2; edge a b 3; edge b c 3");
    CHECK(classify_coxeter_subset(path, {0, 2}).kind == CoxeterKind::affine);
    CHECK(classify_coxeter_subset(path, {0, 1, 2}).kind == CoxeterKind::indefinite);
    auto a3 = G("vertex a 2; vertex b 2; vertex c 2; edge a b 3; edge b c 3; edge a c 2");
    CHECK(classify_coxeter_subset(a3, {0, 1, 2}).kind == CoxeterKind::spherical);
    // reducible affine: D_inf x Z/2
    auto star = G("vertex a 2; vertex b 2; vertex c 2; edge a c 2; edge b c 2");
    CHECK(classify_coxeter_subset(star, {0, 1, 2}).kind == CoxeterKind::affine);
    // rank 4 (non-adjacent generators do not commute, so 2-edges are explicit):
    // A4, B4, D4, F4, H4 spherical; affine A3~, C3~; one indefinite
    struct Case {
        std::array<int, 6> m;  // ab bc cd ac bd ad
        CoxeterKind kind;
        std::size_t order;
    };
    const Case cases[] = {
        {{3, 3, 3, 2, 2, 2}, CoxeterKind::spherical, 120},   {{4, 3, 3, 2, 2, 2}, CoxeterKind::spherical, 384},
        {{3, 2, 2, 3, 2, 3}, CoxeterKind::spherical, 192},   {{3, 4, 3, 2, 2, 2}, CoxeterKind::spherical, 1152},
        {{5, 3, 3, 2, 2, 2}, CoxeterKind::spherical, 14400}, {{3, 3, 3, 2, 2, 3}, CoxeterKind::affine, 0},
        {{4, 3, 4, 2, 2, 2}, CoxeterKind::affine, 0},        {{5, 3, 4, 2, 2, 2}, CoxeterKind::indefinite, 0},
    };
    for (const auto& k : cases) {
        ExtendedPresentationGraph g;
        for (const char* v : {"a", "b", "c", "d"}) g.add_vertex(v, 2);
        const int ends[6][2] = {{0, 1}, {1, 2}, {2, 3}, {0, 2}, {1, 3}, {0, 3}};
        for (int e = 0; e < 6; ++e) g.add_edge(ends[e][0], ends[e][1], k.m[static_cast<size_t>(e)]);
        CAPTURE(g.to_text());
        CHECK(classify_coxeter_subset(g, all_of(g)).kind == k.kind);
        if (k.kind == CoxeterKind::spherical) CHECK(coxeter_order(g, all_of(g)) == k.order);
    }
}

TEST_CASE("triangle classification matches the closed form") {
    for (int a = 2; a <= 12; ++a)
        for (int b = a; b <= 12; ++b)
            for (int c = b; c <= 12; ++c) {
                Rational s = Rational(1, a) + Rational(1, b) + Rational(1, c);
                auto k = classify_coxeter_subset(triangle(a, b, c), {0, 1, 2}).kind;
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(c);
                CHECK((k == CoxeterKind::spherical) == (s > 1));
                CHECK((k == CoxeterKind::affine) == (s == 1));
            }
}

TEST_CASE("coxeter classes are invariant under relabelling") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = random_graph(rng, 4, 0.7, {2, 3, 4, 5, 6});
        VertexSet perm = all_of(g);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto h = g.permuted(perm);
        CHECK(classify_coxeter_subset(g, all_of(g)).kind == classify_coxeter_subset(h, all_of(h)).kind);
        CHECK(is_hyperbolic_type(g) == is_hyperbolic_type(h));
        CHECK(is_two_dimensional(g) == is_two_dimensional(h));
    }
}

TEST_CASE("spherical subsets agree with coset enumeration") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 15; ++trial) {
        auto g = random_graph(rng, 4, 0.8, {2, 2, 3, 3, 4, 6});
        auto sph = spherical_subsets(g);
        for (unsigned mask = 1; mask < 16u; ++mask) {
            VertexSet s;
            for (int i = 0; i < 4; ++i)
                if (mask >> i & 1u) s.push_back(i);
            bool listed = std::find(sph.begin(), sph.end(), s) != sph.end();
            CHECK(listed == (classify_coxeter_subset(g, s).kind == CoxeterKind::spherical));
            CHECK(listed == (coxeter_order(g, s, 50000) != 0));
        }
    }
}

TEST_CASE("two-dimensionality") {
    CHECK_FALSE(is_two_dimensional(triangle(2, 2, 2)));
    CHECK(is_two_dimensional(triangle(3, 3, 3)));
    CHECK(is_two_dimensional(cycle(5, 3, 6)));
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = random_graph(rng, 5, 0.5, {2, 3, 4, 5, 6, 7});
        if (is_triangle_free(g)) CHECK(is_two_dimensional(g));
        if (!is_two_dimensional(g)) continue;
        for (unsigned mask = 0; mask < 32u; ++mask) {
            VertexSet s;
            for (int i = 0; i < 5; ++i)
                if (mask >> i & 1u) s.push_back(i);
            if (s.size() >= 3) CHECK(classify_coxeter_subset(g, s).kind != CoxeterKind::spherical);
        }
    }
}

TEST_CASE("hyperbolic type") {
    auto sq = cycle(4, 2, 2);
    CHECK(is_hyperbolic_type(sq) == Decision::no);
    CHECK(check_hyperbolic_type(sq).method == "triangle-free-squares");
    CHECK(is_hyperbolic_type(cycle(5, 3, 3)) == Decision::yes);
    CHECK(moussong_subset_check(cycle(5, 3, 3)).verdict == Decision::yes);
    auto t = triangle(3, 3, 3, 3);
    auto hc = check_hyperbolic_type(t);
    CHECK(hc.verdict == Decision::no);
    REQUIRE(hc.affine_witness);
    CHECK(*hc.affine_witness == VertexSet{0, 1, 2});
    CHECK(is_hyperbolic_type(triangle(2, 3, 7)) == Decision::yes);

    // commuting infinite pair inside a graph with a triangle
    auto g = G("vertex a 2;vertex b 2;vertex c 2;vertex d 2;vertex e 2;"
               "edge a c 2;edge a d 2;edge b c 2;edge b d 2;edge a e 3;edge c e 3");
    CHECK_FALSE(is_triangle_free(g));
    auto gc = check_hyperbolic_type(g);
    CHECK(gc.verdict == Decision::no);
    CHECK(gc.method == "moussong-subsets");
    REQUIRE(gc.commuting_witness);

    // the subset scan agrees with the square criterion on triangle-free graphs
    std::mt19937_64 rng(17);
    int checked = 0, negatives = 0;
    for (int trial = 0; trial < 300 && checked < 60; ++trial) {
        auto r = random_graph(rng, 6, 0.45, {2, 2, 3, 4});
        if (!is_triangle_free(r)) continue;
        ++checked;
        auto v = moussong_subset_check(r).verdict;
        CHECK(v == (has_all_two_square(r) ? Decision::no : Decision::yes));
        negatives += v == Decision::no;
    }
    CHECK(checked >= 30);
    CHECK(negatives >= 1);

    // size guard
    auto big = triangle(3, 3, 4);
    CHECK(check_hyperbolic_type(big, 2).verdict == Decision::undecided);
    // triangle-free: decided at any size
    CHECK(check_hyperbolic_type(cycle(20, 3, 2), 14).verdict == Decision::yes);
    auto sq20 = cycle(20, 3, 3);
    sq20.add_edge(0, 10, 2), sq20.add_edge(10, 5, 2), sq20.add_edge(5, 15, 2), sq20.add_edge(15, 0, 2);
    REQUIRE(is_triangle_free(sq20));
    CHECK(check_hyperbolic_type(sq20, 14).verdict == Decision::no);
}

TEST_CASE("criteria profile") {
    auto e = G("vertex i 3; vertex j 3; edge i j 6");
    auto c = compute_criteria_profile(e);
    CHECK(c.peripheral_edges == std::vector<int>{0});
    CHECK(c.equality_edges == std::vector<int>{0});
    CHECK(c.poison_edges == std::vector<int>{0});

    auto f = compute_criteria_profile(G("vertex i 2; vertex j 3; edge i j 4"));
    CHECK(f.peripheral_edges.empty());

    auto sq = compute_criteria_profile(cycle(4, 2, 2));
    CHECK_FALSE(sq.irreducible);
    CHECK(sq.has_all_two_square);
    CHECK(sq.hyperbolic_type == Decision::no);

    auto pent = compute_criteria_profile(cycle(5, 3, 6));
    CHECK(pent.irreducible);
    CHECK(pent.two_dimensional);
    CHECK(pent.triangle_free);
    CHECK(pent.fc_type);
    CHECK(pent.hyperbolic_type == Decision::yes);
    CHECK(pent.peripheral_edges.size() == 5);

    auto tri = compute_criteria_profile(triangle(3, 3, 3, 3));
    CHECK(tri.two_dimensional);
    CHECK_FALSE(tri.fc_type);
    CHECK(tri.hyperbolic_type == Decision::no);
    CHECK(compute_criteria_profile(triangle(2, 2, 2)).fc_type);

    // infinite vertex labels: 1/inf = 0 counts toward peripheral, never poison
    auto inf = compute_criteria_profile(G("vertex a inf; vertex b 4; edge a b 4"));
    CHECK(inf.peripheral_edges.size() == 1);
    CHECK(inf.poison_edges.empty());
    // Z x Z/2: h > 1 with 1/inf = 0, yet the edge group is infinite
    auto z2 = compute_criteria_profile(G("vertex a inf; vertex b 2; edge a b 2"));
    CHECK(z2.peripheral_edges.size() == 1);
    CHECK(z2.poison_edges.empty());

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_graph(rng, 5, 0.5, {2, 3, 4, 6, 8});
        auto p = compute_criteria_profile(g);
        CHECK(p.peripheral_edges == p.poison_edges);
        CHECK(std::includes(p.poison_edges.begin(), p.poison_edges.end(), p.equality_edges.begin(), p.equality_edges.end()));
        CHECK(p.triangle_free == (p.two_dimensional && p.fc_type));
    }
}
