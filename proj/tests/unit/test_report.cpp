#include "doctest.h"
#include "shephard/report.hpp"

#include <set>

using namespace shephard;

namespace {

const char* kPentagon =
    "graph pentagon; vertex a 3; vertex b 3; vertex c 3; vertex d 3; vertex e 3;"
    "edge a b 6; edge b c 6; edge c d 6; edge d e 6; edge e a 6";

}  // namespace

TEST_CASE("every verdict entry cites a table row") {
    auto r = build_verdict_report(parse_graph(kPentagon));
    std::set<std::string> keys;
    for (const auto& e : r.entries) {
        CHECK_FALSE(e.citation.empty());
        CHECK_FALSE(e.trace.empty());
        keys.insert(e.key);
    }
    CHECK(keys.size() == r.entries.size());
    for (auto k : {"notCat0", "relativelyHyperbolic", "hyperbolic", "biautomatic", "artinResiduallyFinite"})
        CHECK(keys.count(k));
    for (const auto& e : dihedral_verdicts(classify(3, 6, 3))) CHECK_FALSE(e.citation.empty());
    CHECK_THROWS_AS(r.entry("nonsense"), std::out_of_range);
    CHECK_THROWS(citation("nonsense"));
}

TEST_CASE("dihedral verdicts follow the regime") {
    auto get = [](int p, int q, int r, const std::string& key) {
        for (const auto& e : dihedral_verdicts(classify(p, q, r)))
            if (e.key == key) return e.applies;
        FAIL("missing " << key);
        return Decision::undecided;
    };
    CHECK(get(3, 6, 3, "notCat0") == Decision::yes);
    CHECK(get(3, 6, 3, "notSemihyperbolic") == Decision::yes);
    CHECK(get(3, 6, 3, "biautomatic") == Decision::no);
    CHECK(get(4, 6, 4, "biautomatic") == Decision::yes);
    CHECK(get(4, 6, 4, "notSemihyperbolic") == Decision::no);
    CHECK(get(2, 4, 3, "finite") == Decision::yes);
    CHECK(get(2, 4, 3, "notCat0") == Decision::no);
}

TEST_CASE("pentagon report: relatively hyperbolic, not hyperbolic") {
    auto r = build_verdict_report(parse_graph(kPentagon));
    CHECK(r.entry("relativelyHyperbolic").applies == Decision::yes);
    // 3,6,3 edges are Euclidean: infinite, so peripheral, and flat
    CHECK(r.entry("hyperbolic").applies == Decision::no);
    CHECK(r.entry("notSemihyperbolic").applies == Decision::yes);
    CHECK(r.entry("biautomatic").applies == Decision::no);
    CHECK(r.peripherals.size() == 5);
    CHECK(r.consequences.size() == 4);
}

TEST_CASE("finite edge groups give a hyperbolic verdict") {
    // (3,4,3) edges: h = 1/3 + 1/2 + 1/3 > 1
    auto r = build_verdict_report(parse_graph(
        "graph pent4; vertex a 3; vertex b 3; vertex c 3; vertex d 3; vertex e 3;"
        "edge a b 4; edge b c 4; edge c d 4; edge d e 4; edge e a 4"));
    CHECK(r.peripherals.empty());
    CHECK(r.entry("hyperbolic").applies == r.entry("relativelyHyperbolic").applies);
    CHECK(r.entry("notCat0").applies == Decision::no);
}

TEST_CASE("JSON envelope and byte stability") {
    auto g = parse_graph(kPentagon);
    Json j = envelope("verdict-report", to_json(build_verdict_report(g)));
    CHECK(j["schemaVersion"] == kSchemaVersion);
    CHECK(j["kind"] == "verdict-report");
    CHECK(j.contains("result"));
    std::string a = dump(j);
    CHECK(a.back() == '\n');
    CHECK(a == dump(envelope("verdict-report", to_json(build_verdict_report(parse_graph(g.to_text()))))));
    CHECK(Json::parse(a) == j);
}

TEST_CASE("text and figure renderers") {
    auto text = render_text(classify(3, 6, 3));
    CHECK(text.find("euclidean") != std::string::npos);
    auto rep = render_text(build_verdict_report(parse_graph(kPentagon)));
    CHECK(rep.find("relativelyHyperbolic") != std::string::npos);

    auto ball = build_theta_hat_ball(3, 6, 3, 4);
    auto dot = to_dot(ball);
    CHECK(dot.rfind("graph", 0) == 0);
    CHECK(dot.find("--") != std::string::npos);

    auto svg = tiling_svg(build_tiling_ball(triangle_group(2, 3, 7), 3), 200);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
}
