// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "shephard/complex.hpp"
#include "shephard/dihedral.hpp"
#include "shephard/errors.hpp"
#include "shephard/finite_group.hpp"
#include "shephard/graph.hpp"
#include "shephard/report.hpp"
#include "shephard/tiling.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

using namespace shephard;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Check = std::function<Outcome()>;

// collects the first failure message
struct Tally {
    bool ok = true;
    std::string first;
    long long checks = 0;
    void expect(bool cond, const std::string& what) {
        ++checks;
        if (!cond && ok) ok = false, first = what;
        else if (!cond) ok = false;
    }
    Outcome done(const std::string& summary) const {
        return {ok, ok ? summary : "first failure: " + first};
    }
};

std::string triple_name(int p, int q, int r) {
    return "(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
}

SyllableWord random_word(std::mt19937_64& rng, int max_syllables, int p, int r) {
    std::uniform_int_distribution<int> len(0, max_syllables), coin(0, 1);
    std::vector<Syllable> syl;
    int n = len(rng);
    char cur = coin(rng) ? 's' : 't';
    for (int i = 0; i < n; ++i) {
        int ord = cur == 's' ? p : r;
        std::uniform_int_distribution<int> ex(-(ord - 1), ord - 1);
        int e = 0;
        while (e == 0) e = ex(rng);
        syl.push_back({cur, e});
        cur = cur == 's' ? 't' : 's';
    }
    return SyllableWord(syl);
}

// w times a conjugated relator: equal to w, but not syntactically
SyllableWord perturb(std::mt19937_64& rng, const SyllableWord& w, int p, int q, int r) {
    SyllableWord braid = SyllableWord::alternating('s', q) * SyllableWord::alternating('t', q).inverse();
    std::vector<SyllableWord> rels{SyllableWord::parse("s").power(p), SyllableWord::parse("t").power(r), braid};
    SyllableWord g = random_word(rng, 3, p, r);
    SyllableWord x = g * rels[rng() % rels.size()] * g.inverse();
    return rng() % 2 ? w * x : x * w;
}

// ---------------------------------------------------------------- criteria

Outcome classification_table() {
    Tally t;
    int triples = 0, finite = 0;
    for (int p = 2; p <= 12; ++p)
        for (int q = 2; q <= 12; ++q)
            for (int r = 2; r <= 12; ++r) {
                if (q % 2 == 1 && p != r) {
                    bool threw = false;
                    try {
                        classify(p, q, r);
                    } catch (const InputError&) {
                        threw = true;
                    }
                    t.expect(threw, "odd q with p != r accepted at " + triple_name(p, q, r));
                    continue;
                }
                ++triples;
                // sign of h - 1 in integers: qr + 2pr + pq - pqr
                long long s = 1LL * q * r + 2LL * p * r + 1LL * p * q - 1LL * p * q * r;
                Regime want = s > 0 ? Regime::finite : (s == 0 ? Regime::euclidean : Regime::hyperbolic);
                t.expect(classify(p, q, r).regime == want, "regime at " + triple_name(p, q, r));
                if (want == Regime::finite) ++finite;
            }
    for (int p = 2; p <= 12; ++p)
        t.expect((classify(p, 3, p).regime == Regime::finite) == (p <= 5), "Sh(p,3,p) finiteness at p=" + std::to_string(p));
    return t.done(std::to_string(triples) + " triples, " + std::to_string(finite) +
                  " finite; Sh(p,3,p) finite exactly for p in {2,3,4,5}");
}

Outcome relator_suite() {
    Tally t;
    for (auto [p, q, r] : {std::array{3, 6, 3}, {4, 4, 4}, {6, 3, 6}, {4, 6, 4}, {2, 12, 3}}) {
        DihedralSession S(p, q, r);
        const std::string n = triple_name(p, q, r);
        t.expect(S.infinite(), n + " infinite");
        t.expect(S.is_trivial(SyllableWord::parse("s").power(p)), n + " s^p");
        t.expect(S.is_trivial(SyllableWord::parse("t").power(r)), n + " t^r");
        auto braid = SyllableWord::alternating('s', q) * SyllableWord::alternating('t', q).inverse();
        t.expect(S.is_trivial(braid), n + " braid relator");
        t.expect(!S.is_trivial(SyllableWord::alternating('s', q)), n + " prod(s,t;q) nontrivial");
        if (q % 2 == 0) {
            auto nf = S.normalize(SyllableWord::alternating('s', q));  // (st)^(q/2)
            t.expect(nf.delta == 0 && nf.z == 1, n + " normal form of (st)^(q/2)");
        }
    }
    return t.done("5 triples: s^p, t^r, braid relator trivial; (st)^(q/2) -> (identity, 1) for even q");
}

Outcome girth_certification() {
    Tally t;
    std::ostringstream os;
    for (auto [p, q, r] : {std::array{3, 6, 3}, {4, 4, 4}}) {
        auto c = certify_girth(p, q, r, 0);
        t.expect(c.certified && c.trivial_below_bound.empty() && c.examined_through == 2 * q - 1,
                 "Sh" + triple_name(p, q, r) + " below 2q");
        os << "Sh" << triple_name(p, q, r) << ": " << c.candidates << " words of length < " << 2 * q
           << ", none trivial; ";
    }
    std::string d = os.str();
    return t.done(d.substr(0, d.size() - 2));
}

Outcome dual_oracle() {
    Tally t;
    int total = 0, equal = 0;
    for (auto [p, q, r] : {std::array{3, 6, 3}, {4, 4, 4}, {4, 6, 4}, {6, 3, 6}, {2, 12, 3}}) {
        std::mt19937_64 rng(20260000 + 100 * p + 10 * q + r);
        DihedralSession S(p, q, r);
        for (int i = 0; i < 200; ++i) {
            SyllableWord u = random_word(rng, 12, p, r);
            SyllableWord v = i % 2 ? perturb(rng, u, p, q, r) : random_word(rng, 12, p, r);
            bool a = S.are_equal(u, v), b = brute_force_equal(p, q, r, u, v);
            t.expect(a == b, "Sh" + triple_name(p, q, r) + ": " + u.to_string() + " vs " + v.to_string());
            equal += a, ++total;
        }
    }
    return t.done(std::to_string(total) + " seeded pairs over 5 triples agree (" + std::to_string(equal) + " equal)");
}

Outcome homology_data() {
    Tally t;
    int n = 0, literal = 0;
    for (int p = 2; p <= 12; ++p)
        for (int q = 2; q <= 12; ++q)
            for (int r = 2; r <= 12; ++r) {
                auto c = compute_chain_data(p, q, r);
                const std::string name = triple_name(p, q, r);
                t.expect(c.d2.apply(c.h2_generator) == std::vector<Integer>{0, 0}, name + " cycle");
                t.expect(c.matches_closed_form, name + " closed form (lcm(p,q,r)) up to sign");
                long long k = std::lcm(std::lcm(p, q), r);
                t.expect(c.pairing == k / q && c.pairing != 0, name + " pairing lcm/q");
                literal += c.matches_literal_form, ++n;
            }
    return t.done(std::to_string(n) + " triangle triples: kernel generator matches the lcm(p,q,r) form, pairing = lcm/q != 0; "
                  "the lcm(p,r) variant holds for " + std::to_string(literal));
}

Outcome homomorphisms() {
    Tally t;
    for (auto [p, q, r] : {std::array{2, 3, 7}, {3, 3, 4}, {2, 4, 5}}) {
        auto L = verify_lattice_maps(p, q, r);
        const std::string n = triple_name(p, q, r);
        t.expect(L.phi_map.ok, n + " Phi relators");
        t.expect(L.psi_map.ok, n + " Psi relators");
        t.expect(L.psi_phi_identity && L.phi_psi_identity, n + " compositions");
    }
    return t.done("Phi, Psi kill every relator and compose to the identity on generators for 3 triples");
}

Outcome finite_case() {
    Tally t;
    std::mt19937_64 rng(77);
    std::ostringstream os;
    for (auto [p, q, r] : {std::array{3, 3, 3}, {2, 4, 3}}) {
        FiniteShephardGroup G(p, q, r);
        size_t tc = todd_coxeter_index(2, shephard_relators(p, q, r), {});
        t.expect(G.order() == tc, "orders at " + triple_name(p, q, r));
        // conjugates of generator powers: orders divide the generator order
        for (int i = 0; i < 200; ++i) {
            SyllableWord g = random_word(rng, 6, p, r);
            bool s = rng() % 2;
            int ord = s ? p : r;
            long long k = 1 + static_cast<long long>(rng() % static_cast<unsigned>(ord - 1));
            SyllableWord x = g * SyllableWord({{s ? 's' : 't', k}}) * g.inverse();
            int e = G.evaluate(x);
            if (e == G.identity()) continue;
            t.expect(ord % G.element_order(e) == 0, "conjugate order at " + triple_name(p, q, r));
        }
        os << "Sh" << triple_name(p, q, r) << " order " << G.order() << " (closure = coset enumeration); ";
    }
    // infinite groups: sampled torsion elements have orders dividing p or r
    int torsion = 0;
    for (auto [p, q, r] : {std::array{3, 6, 3}, {4, 6, 4}}) {
        DihedralSession S(p, q, r);
        for (int i = 0; i < 150; ++i) {
            SyllableWord g = random_word(rng, 4, p, r), h = random_word(rng, 3, p, r);
            SyllableWord x = g * h * g.inverse();
            auto o = S.element_order(x, 200);
            if (o.kind != OrderResult::Kind::finite || o.order == 1) continue;
            ++torsion;
            t.expect(p % o.order == 0 || r % o.order == 0, "torsion order in Sh" + triple_name(p, q, r));
        }
    }
    os << torsion << " torsion elements in sampled conjugates of Sh(3,6,3), Sh(4,6,4) have order dividing p or r";
    return t.done(os.str());
}

Outcome complex_invariants() {
    Tally t;
    auto ball = build_theta_hat_ball(3, 6, 3, 14);
    t.expect(ball.is_bipartite(), "bipartite");
    long long checked = ball.check_interior_valences();
    t.expect(checked > 0, "interior valences 3");
    auto g = girth_within_ball(ball);
    t.expect(!g.girth || *g.girth >= 12, "girth >= 12");
    long long figures = 0;
    for (auto [p, q, r] : {std::array{3, 3, 3}, {2, 3, 7}, {2, 4, 4}, {4, 3, 4}}) {
        auto tb = build_tiling_ball(triangle_group(p, q, r), 7);
        t.expect(tb.euler_characteristic_complete() == 1, "V-E+F at " + triple_name(p, q, r));
        long long f = tb.check_vertex_figures();
        t.expect(f > 0, "vertex figure {P,Q,R,Q} at " + triple_name(p, q, r));
        figures += f;
    }
    std::ostringstream os;
    os << "Theta-hat(3,6,3) radius 14: " << ball.vertices.size() << " vertices, bipartite, " << checked
       << " interior valences ok, girth " << (g.girth ? std::to_string(*g.girth) : "none") << " >= 12; tiling balls "
       << "V-E+F = 1, " << figures << " interior vertex figures {P,Q,R,Q}";
    return t.done(os.str());
}

Outcome verdict_fixtures() {
    Tally t;
    auto pent = parse_graph(
        "graph pentagon; vertex a 3; vertex b 3; vertex c 3; vertex d 3; vertex e 3;"
        "edge a b 6; edge b c 6; edge c d 6; edge d e 6; edge e a 6");
    auto rp = build_verdict_report(pent);
    t.expect(rp.entry("relativelyHyperbolic").applies == Decision::yes, "pentagon relatively hyperbolic");
    t.expect(rp.peripherals.size() == 5, "pentagon peripherals");
    t.expect(rp.entry("shephardResiduallyFinite").applies == Decision::yes, "pentagon Sh residually finite");
    t.expect(rp.entry("artinResiduallyFinite").applies == Decision::yes, "pentagon A residually finite");

    auto square = parse_graph("graph square; vertex a 3; vertex b 3; vertex c 3; vertex d 3;"
                              "edge a b 2; edge b c 2; edge c d 2; edge d a 2");
    auto rs = build_verdict_report(square);
    t.expect(rs.profile.hyperbolic_type == Decision::no, "square not hyperbolic type");
    t.expect(!rs.profile.irreducible, "square reducible");

    auto tri = parse_graph("graph triangle; vertex a 3; vertex b 3; vertex c 3; edge a b 3; edge b c 3; edge c a 3");
    auto rt = build_verdict_report(tri);
    t.expect(rt.profile.two_dimensional, "triangle 2D");
    t.expect(rt.profile.hyperbolic_type == Decision::no, "triangle not hyperbolic type");

    // byte-stable JSON: repeated runs and a text round trip
    for (const auto* g : {&pent, &square, &tri}) {
        std::string a = dump(envelope("verdict-report", to_json(build_verdict_report(*g))));
        std::string b = dump(envelope("verdict-report", to_json(build_verdict_report(*g))));
        std::string c = dump(envelope("verdict-report", to_json(build_verdict_report(parse_graph(g->to_text())))));
        t.expect(a == b && a == c, "byte-stable JSON for " + g->name);
    }
    return t.done("pentagon: relatively hyperbolic, 5 peripherals, Sh and A residually finite; square: not hyperbolic "
                  "type, reducible; triangle: 2D, affine; JSON byte-stable");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, Check>> criteria{
        {"1 classification table", classification_table},
        {"2 relator suite", relator_suite},
        {"3 girth certification", girth_certification},
        {"4 dual-oracle agreement", dual_oracle},
        {"5 homology data", homology_data},
        {"6 homomorphism verification", homomorphisms},
        {"7 finite-case cross-check", finite_case},
        {"8 complex invariants", complex_invariants},
        {"9 verdict fixtures", verdict_fixtures},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  criterion %-30s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
