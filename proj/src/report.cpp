#include "shephard/report.hpp"

#include "shephard/errors.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace shephard {

const std::map<std::string, std::string>& citation_table() {
    static const std::map<std::string, std::string> table{
        {"dihedral-not-cat0", "Thm 1.1, \"In particular, Sh(p,q,r) is not CAT(0)\""},
        {"dihedral-euclidean", "Thm 1.1(1), \"not semihyperbolic\""},
        {"dihedral-hyperbolic", "Thm 1.1(2), \"is biautomatic\""},
        {"dihedral-linear", "Thm 1.1, \"Sh(p,q,r) is linear\""},
        {"dihedral-torsion", "Cor 3.7, \"conjugate to a power of one of the standard generators\""},
        {"dihedral-finite", "Thm 1.1 (remark), \"1/p + 2/q + 1/r <= 1 if and only if Sh(p,q,r) is infinite\""},
        {"poison-edge", "Cor (2-dimensional poison edge), \"in particular is not CAT(0)\""},
        {"poison-equality", "Cor (2-dimensional poison edge), \"then Sh_Gamma is not semihyperbolic\""},
        {"cocompact-complex", "Thm (cocompact action) via Thm 5.8, \"piecewise Euclidean CAT(0) cell complex\""},
        {"acylindrical", "Thm 1.4, \"Then Sh_Gamma is acylindrically hyperbolic\""},
        {"relatively-hyperbolic", "Thm 1.5, \"relatively hyperbolic group pair\""},
        {"hyperbolic", "Thm 1.5, \"if every edge group Sh_Lambda is finite, then Sh_Gamma is hyperbolic\""},
        {"consequences", "Cor 1.6(1-4), \"has solvable word problem\""},
        {"biautomatic", "Cor 1.6, \"then Sh_Gamma is biautomatic\""},
        {"shephard-rf", "Cor residuallyfinite, \"no 4-cycle whose edges are each labeled 2\""},
        {"artin-rf", "Thm 1.7, \"Then A_Gamma is residually finite\""},
        {"torsion-free", "Cor (after residual finiteness), \"virtually torsion-free\""},
        {"hyperbolicity-annotation", "Lemma 7.3, \"Theta_Gamma is Gromov hyperbolic\""},
    };
    return table;
}

const std::string& citation(const std::string& key) { return citation_table().at(key); }

const VerdictEntry& VerdictReport::entry(const std::string& key) const {
    for (const auto& e : entries)
        if (e.key == key) return e;
    throw std::out_of_range("no verdict entry " + key);
}

namespace {

std::string rat(const Rational& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

std::string label_str(int label) { return label == kInfiniteLabel ? "inf" : std::to_string(label); }

std::string edge_name(const ExtendedPresentationGraph& g, int i) {
    const GraphEdge& e = g.edges()[static_cast<size_t>(i)];
    return g.vertex(e.a).id + "-" + g.vertex(e.b).id + " (" + label_str(g.vertex(e.a).label) + "," +
           std::to_string(e.label) + "," + label_str(g.vertex(e.b).label) + ")";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

VerdictEntry make(const std::string& key, Decision d, std::vector<std::string> trace, const std::string& cite) {
    return VerdictEntry{key, d, std::move(trace), citation(cite)};
}

// connected components of the underlying graph
std::vector<std::vector<int>> components(const ExtendedPresentationGraph& g) {
    std::vector<int> comp(static_cast<size_t>(g.size()), -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < g.size(); ++s) {
        if (comp[static_cast<size_t>(s)] >= 0) continue;
        out.emplace_back();
        std::vector<int> stack{s};
        comp[static_cast<size_t>(s)] = static_cast<int>(out.size() - 1);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out.back().push_back(v);
            for (int w = 0; w < g.size(); ++w)
                if (g.adjacent(v, w) && comp[static_cast<size_t>(w)] < 0) {
                    comp[static_cast<size_t>(w)] = comp[static_cast<size_t>(s)];
                    stack.push_back(w);
                }
        }
    }
    return out;
}

}  // namespace

VerdictReport build_verdict_report(const ExtendedPresentationGraph& g, int vertex_limit) {
    VerdictReport r;
    r.graph_name = g.name;
    r.graph = g;
    r.profile = compute_criteria_profile(g, vertex_limit);
    const CriteriaProfile& P = r.profile;
    for (int i : P.peripheral_edges) r.peripherals.push_back(edge_name(g, i));

    const std::string dim = "2-dimensional: " + yes_no(P.two_dimensional);
    std::string hyp = "hyperbolic type: " + to_string(P.hyperbolic_type) + " (" + P.hyperbolicity.method + ")";
    if (P.hyperbolicity.affine_witness) {
        hyp += ", affine subset {";
        for (size_t i = 0; i < P.hyperbolicity.affine_witness->size(); ++i)
            hyp += (i ? "," : "") + g.vertex((*P.hyperbolicity.affine_witness)[i]).id;
        hyp += "}";
    }
    if (P.hyperbolicity.commuting_witness) hyp += ", commuting pair of non-spherical subsets";

    // poison edges block CAT(0) metrics when the complex is 2-dimensional
    {
        std::vector<std::string> t{dim};
        for (int i : P.poison_edges) t.push_back("poison edge " + edge_name(g, i) + ": finite labels, h <= 1");
        Decision d = P.poison_edges.empty() ? Decision::no : (P.two_dimensional ? Decision::yes : Decision::undecided);
        if (d == Decision::undecided) t.push_back("not 2-dimensional: embedding of the edge group not established");
        r.entries.push_back(make("notCat0", d, t, "poison-edge"));
    }
    {
        std::vector<std::string> t{dim};
        for (int i : P.equality_edges) t.push_back("edge " + edge_name(g, i) + ": finite labels, h = 1");
        Decision d = P.equality_edges.empty() ? Decision::no : (P.two_dimensional ? Decision::yes : Decision::undecided);
        r.entries.push_back(make("notSemihyperbolic", d, t, "poison-equality"));
    }
    r.entries.push_back(make("cat0ComplexCertificate", P.two_dimensional ? Decision::yes : Decision::no,
                             {dim, "finite vertex labels: " + yes_no(P.all_vertex_labels_finite)},
                             "cocompact-complex"));
    {
        std::vector<std::string> t{"vertices: " + std::to_string(g.size()) + " (need >= 3)", dim,
                                   "irreducible (join criterion): " + yes_no(P.irreducible)};
        std::set<int> infinite_edge_vertices;
        for (int i : P.peripheral_edges) {
            infinite_edge_vertices.insert(g.edges()[static_cast<size_t>(i)].a);
        }
        bool every = true;
        for (const auto& c : components(g)) {
            bool has = std::any_of(c.begin(), c.end(), [&](int v) { return infinite_edge_vertices.count(v) > 0; });
            every = every && has;
        }
        t.push_back("every component has an infinite edge group: " + yes_no(every));
        bool ok = g.size() >= 3 && P.two_dimensional && P.irreducible && every;
        r.entries.push_back(make("acylindricallyHyperbolic", ok ? Decision::yes : Decision::no, t, "acylindrical"));
    }
    Decision rel = !P.two_dimensional ? Decision::no : P.hyperbolic_type;
    {
        std::vector<std::string> t{dim, hyp, "peripheral edges: " + std::to_string(P.peripheral_edges.size())};
        r.entries.push_back(make("relativelyHyperbolic", rel, t, "relatively-hyperbolic"));
    }
    {
        Decision d = P.peripheral_edges.empty() ? rel : Decision::no;
        r.entries.push_back(make("hyperbolic", d,
                                 {dim, hyp, "every edge group finite: " + yes_no(P.peripheral_edges.empty())},
                                 "hyperbolic"));
    }
    r.entries.push_back(make("consequenceList", rel, {dim, hyp}, "consequences"));
    if (rel != Decision::no)
        r.consequences = {"solvable word problem", "Tits alternative", "finite asymptotic dimension",
                          "rapid decay property"};
    {
        bool no_flat = true;
        std::vector<std::string> t{dim, hyp};
        for (size_t i = 0; i < g.edges().size(); ++i)
            if (edge_h(g, g.edges()[i]) == 1) {
                no_flat = false;
                t.push_back("edge " + edge_name(g, static_cast<int>(i)) + " has h = 1");
            }
        t.push_back("no edge with h = 1: " + yes_no(no_flat));
        r.entries.push_back(make("biautomatic", no_flat ? rel : Decision::no, t, "biautomatic"));
    }
    {
        std::vector<std::string> t{"triangle-free: " + yes_no(P.triangle_free),
                                   "4-cycle with all edges labelled 2: " + yes_no(P.has_all_two_square)};
        Decision d = P.triangle_free && !P.has_all_two_square ? Decision::yes : Decision::no;
        r.entries.push_back(make("shephardResiduallyFinite", d, t, "shephard-rf"));
        r.entries.push_back(make("artinResiduallyFinite", d, t, "artin-rf"));
        r.entries.push_back(make("virtuallyTorsionFree", d, t, "torsion-free"));
    }
    return r;
}

std::vector<VerdictEntry> dihedral_verdicts(const DihedralClassification& c) {
    const bool infinite = c.regime != Regime::finite;
    const std::string h = "h = " + rat(c.h) + " (" + to_string(c.regime) + ")";
    auto when = [](bool b) { return b ? Decision::yes : Decision::no; };
    const std::string le = std::string("h <= 1: ") + yes_no(infinite);
    const std::string eq = std::string("h = 1: ") + yes_no(c.regime == Regime::euclidean);
    const std::string lt = std::string("h < 1: ") + yes_no(c.regime == Regime::hyperbolic);
    return {
        make("finite", when(!infinite), {h}, "dihedral-finite"),
        make("notCat0", when(infinite), {h, le}, "dihedral-not-cat0"),
        make("notSemihyperbolic", when(c.regime == Regime::euclidean), {h, eq}, "dihedral-euclidean"),
        make("biautomatic", when(c.regime == Regime::hyperbolic), {h, lt}, "dihedral-hyperbolic"),
        make("linear", Decision::yes, {h, "holds for every triple"}, "dihedral-linear"),
        make("torsionConjugateToGeneratorPowers", when(infinite), {h, le}, "dihedral-torsion"),
    };
}

// ---------------------------------------------------------------- JSON

namespace {

Json entry_json(const VerdictEntry& e) {
    return Json{{"applies", to_string(e.applies)}, {"hypothesesTrace", e.trace}, {"citation", e.citation}};
}

Json set_json(const ExtendedPresentationGraph& g, const VertexSet& s) {
    Json out = Json::array();
    for (int v : s) out.push_back(g.vertex(v).id);
    return out;
}

}  // namespace

Json to_json(const DihedralClassification& c) {
    Json j{{"p", c.p}, {"q", c.q}, {"r", c.r}, {"h", rat(c.h)}, {"regime", to_string(c.regime)},
           {"transported", c.transported}, {"triangleGroup", {c.tri_p, c.tri_q, c.tri_r}},
           {"quotient", c.quotient}, {"k", c.k}, {"m", c.m}};
    j["center"] = c.center_word.empty() ? Json(nullptr) : Json(c.center_word.to_string());
    Json v = Json::object();
    for (const auto& e : dihedral_verdicts(c)) v[e.key] = entry_json(e);
    j["verdicts"] = v;
    return j;
}

Json to_json(const VerdictReport& r) {
    const CriteriaProfile& P = r.profile;
    Json prof{{"twoDimensional", P.two_dimensional},
              {"triangleFree", P.triangle_free},
              {"allTwoSquare", P.has_all_two_square},
              {"hyperbolicType", to_string(P.hyperbolic_type)},
              {"hyperbolicityMethod", P.hyperbolicity.method},
              {"fcType", P.fc_type},
              {"irreducible", P.irreducible},
              {"finiteVertexLabels", P.all_vertex_labels_finite}};
    Json entries = Json::object();
    for (const auto& e : r.entries) entries[e.key] = entry_json(e);
    Json j{{"graph", r.graph_name}, {"profile", prof},     {"verdicts", entries},
           {"peripheralList", r.peripherals}, {"consequenceList", r.consequences}, {"partial", r.partial}};
    if (r.certificate) j["certificate"] = to_json(*r.certificate, r.graph);
    return j;
}

Json to_json(const ShephardNormalForm& nf) {
    return Json{{"delta", nf.delta}, {"deltaIsIdentity", nf.delta == 0}, {"z", nf.z},
                {"section", nf.section_word()}};
}

Json to_json(const OrderResult& o) {
    const char* kind = o.kind == OrderResult::Kind::finite ? "finite"
                       : o.kind == OrderResult::Kind::infinite ? "infinite"
                                                               : "exceeds-cutoff";
    Json j{{"kind", kind}, {"reason", o.reason}};
    j["order"] = o.kind == OrderResult::Kind::finite ? Json(o.order) : Json(nullptr);
    return j;
}

Json to_json(const GirthCertificate& c) {
    Json j{{"p", c.p},
           {"q", c.q},
           {"r", c.r},
           {"bound", c.bound},
           {"examinedThrough", c.examined_through},
           {"rawCandidates", c.raw_candidates},
           {"candidates", c.candidates},
           {"certified", c.certified},
           {"partial", c.interrupted}};
    Json below = Json::array();
    for (const auto& w : c.trivial_below_bound) below.push_back(w.to_string());
    j["trivialBelowBound"] = below;
    j["minimalTrivialLength"] = c.minimal_trivial_length ? Json(*c.minimal_trivial_length) : Json(nullptr);
    j["minimalTrivialWitness"] = c.minimal_trivial_witness ? Json(c.minimal_trivial_witness->to_string()) : Json(nullptr);
    return j;
}

Json to_json(const CosetGraphBall& b, bool with_cells) {
    Json j{{"p", b.p},
           {"q", b.q},
           {"r", b.r},
           {"kind", b.central ? "theta-hat" : (b.finite_group ? "theta-hat" : "coset-geometry")},
           {"finiteGroup", b.finite_group},
           {"radius", b.radius},
           {"complete", b.complete},
           {"partial", b.interrupted},
           {"budgetLimited", b.budget_limited},
           {"vertexCount", b.vertices.size()},
           {"edgeCount", b.edges.size()},
           {"bipartite", b.is_bipartite()},
           {"edgeMetricLength", "pi*" + rat(b.edge_length_over_pi)}};
    long long val = b.check_interior_valences();
    j["interiorValences"] = val >= 0 ? Json{{"ok", true}, {"checked", val}} : Json{{"ok", false}};
    if (!b.faces.empty()) {
        std::map<std::string, int> sizes;
        int complete = 0;
        for (size_t i = 0; i < b.faces.size(); ++i) {
            sizes[std::to_string(b.faces[i].size())]++;
            complete += b.face_complete[i] ? 1 : 0;
        }
        j["faces"] = Json{{"count", b.faces.size()}, {"complete", complete}, {"lengths", sizes}};
    }
    if (with_cells) {
        Json vs = Json::array();
        for (const auto& v : b.vertices)
            vs.push_back(Json{{"label", v.label}, {"type", v.type == 0 ? "s" : "t"}, {"z", v.z}, {"distance", v.distance}});
        Json es = Json::array();
        for (const auto& [x, y] : b.edges) es.push_back({x, y});
        j["vertices"] = vs;
        j["edges"] = es;
    }
    return j;
}

Json to_json(const FundamentalDomainData& d, const ExtendedPresentationGraph& g) {
    Json sph = Json::array();
    for (const auto& s : d.spherical) sph.push_back(set_json(g, s));
    Json cells = Json::array();
    for (const auto& c : d.cells) {
        Json cj{{"lower", set_json(g, c.lower)}, {"upper", set_json(g, c.upper)}, {"dimension", c.dimension},
                {"stabilizer", c.local_group}};
        if (!c.moussong_angles.empty()) {
            Json m = Json::array(), q = Json::array();
            for (const auto& a : c.moussong_angles) m.push_back("pi*" + rat(a));
            for (const auto& a : c.cubical_angles) q.push_back("pi*" + rat(a));
            cj["moussongAngles"] = m;
            cj["cubicalAngles"] = q;
        }
        cells.push_back(cj);
    }
    Json links = Json::array();
    for (const auto& [L, lengths] : d.link_simplices) {
        Json ls = Json::array();
        for (const auto& [pair, len] : lengths)
            ls.push_back(Json{{"a", g.vertex(pair.first).id}, {"b", g.vertex(pair.second).id}, {"length", "pi*" + rat(len)}});
        links.push_back(Json{{"subset", set_json(g, L)}, {"edges", ls}});
    }
    return Json{{"spherical", sph},
                {"cells", cells},
                {"simplexCount", d.simplices.size()},
                {"eulerCharacteristic", d.euler_characteristic()},
                {"dimension", d.dimension()},
                {"linkEdgeLengths", links}};
}

Json to_json(const Cat0Certificate& c, const ExtendedPresentationGraph& g) {
    Json edges = Json::array();
    for (const auto& e : c.edges) {
        Json ej{{"edge", e.edge < static_cast<int>(g.edges().size()) ? edge_name(g, e.edge) : std::to_string(e.edge)},
                {"triple", {e.p, e.m, e.r}},
                {"finiteEdgeGroup", e.finite_group},
                {"requiredGirth", e.required_girth},
                {"certifiedRadius", e.radius},
                {"satisfied", e.satisfied},
                {"partial", e.interrupted},
                {"note", e.note},
                {"cycleWitness", e.cycle_witness}};
        ej["shortestCycleFound"] = e.shortest_cycle ? Json(*e.shortest_cycle) : Json(nullptr);
        edges.push_back(ej);
    }
    return Json{{"twoDimensional", c.two_dimensional},
                {"verdict", to_string(c.verdict)},
                {"perEdge", edges},
                {"assumptions", c.assumptions},
                {"hyperbolicType", to_string(c.hyperbolic_type)},
                {"hyperbolicityAnnotation", c.hyperbolicity_annotation},
                {"hyperbolicityCitation", citation("hyperbolicity-annotation")},
                {"partial", c.interrupted}};
}

Json to_json(const TilingBall& b) {
    std::map<std::string, int> types, complete;
    for (size_t i = 0; i < b.faces.size(); ++i) {
        std::string t = to_string(b.store->face(b.faces[i]).type);
        types[t]++;
        if (b.complete[i]) complete[t]++;
    }
    const auto& G = b.store->group();
    return Json{{"triangleGroup", {G.p, G.q, G.r}},
                {"geometry", to_string(G.kind)},
                {"radius", b.radius},
                {"vertexCount", b.vertices.size()},
                {"edgeCount", b.edges.size()},
                {"faceCount", b.faces.size()},
                {"facesByType", types},
                {"completeFacesByType", complete},
                {"eulerCharacteristicComplete", b.euler_characteristic_complete()},
                {"vertexFiguresChecked", b.check_vertex_figures()}};
}

Json envelope(const std::string& kind, Json payload) {
    return Json{{"schemaVersion", kSchemaVersion}, {"kind", kind}, {"result", std::move(payload)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- text

namespace {

void entry_lines(std::ostringstream& os, const VerdictEntry& e) {
    os << "  " << std::left << std::setw(34) << e.key << to_string(e.applies) << "   [" << e.citation << "]\n";
    for (const auto& t : e.trace) os << "      - " << t << "\n";
}

}  // namespace

std::string render_text(const DihedralClassification& c) {
    std::ostringstream os;
    os << "Sh(" << c.p << "," << c.q << "," << c.r << "): " << to_string(c.regime) << ", h = " << rat(c.h) << "\n";
    if (!c.center_word.empty()) os << "  center generated by " << c.center_word.to_string() << "\n";
    os << "  triangle group Delta(" << c.tri_p << "," << c.tri_q << "," << c.tri_r << ")"
       << (c.transported ? " (odd q: transported)" : "") << "; quotient " << c.quotient << "\n";
    for (const auto& e : dihedral_verdicts(c)) entry_lines(os, e);
    return os.str();
}

std::string render_text(const VerdictReport& r) {
    std::ostringstream os;
    os << "graph " << (r.graph_name.empty() ? "(unnamed)" : r.graph_name) << (r.partial ? "  [PARTIAL]" : "") << "\n";
    for (const auto& e : r.entries) entry_lines(os, e);
    if (!r.peripherals.empty()) {
        os << "  peripherals:";
        for (const auto& p : r.peripherals) os << " " << p << ";";
        os << "\n";
    }
    if (!r.consequences.empty()) {
        os << "  consequences:";
        for (const auto& c : r.consequences) os << " " << c << ";";
        os << "\n";
    }
    if (r.certificate) {
        os << "  link-girth certificate: " << to_string(r.certificate->verdict) << "\n";
        for (const auto& e : r.certificate->edges)
            os << "      edge " << e.edge << " (" << e.p << "," << e.m << "," << e.r << "): need " << e.required_girth
               << ", radius " << e.radius << ", shortest "
               << (e.shortest_cycle ? std::to_string(*e.shortest_cycle) : std::string("none")) << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------- figures

std::string to_dot(const CosetGraphBall& b) {
    std::ostringstream os;
    os << "graph coset_ball {\n  node [shape=circle, label=\"\", width=0.12];\n";
    for (size_t i = 0; i < b.vertices.size(); ++i) {
        const auto& v = b.vertices[i];
        os << "  v" << i << " [tooltip=\"" << v.label << "\", style=filled, fillcolor="
           << (v.type == 0 ? "\"#d95f02\"" : "\"#1b9e77\"") << (b.interior(static_cast<int>(i)) ? "" : ", shape=point")
           << "];\n";
    }
    for (const auto& [x, y] : b.edges) os << "  v" << x << " -- v" << y << ";\n";
    os << "}\n";
    return os.str();
}

std::string to_dot(const FundamentalDomainData& d, const ExtendedPresentationGraph& g) {
    // Hasse diagram of the poset of spherical subsets
    auto name = [&](const VertexSet& s) {
        std::string n = "{";
        for (size_t i = 0; i < s.size(); ++i) n += (i ? "," : "") + g.vertex(s[i]).id;
        return n + "}";
    };
    std::ostringstream os;
    os << "digraph spherical_poset {\n  rankdir=BT;\n";
    for (size_t i = 0; i < d.spherical.size(); ++i) os << "  s" << i << " [label=\"" << name(d.spherical[i]) << "\"];\n";
    for (size_t i = 0; i < d.spherical.size(); ++i)
        for (size_t j = 0; j < d.spherical.size(); ++j) {
            const auto &a = d.spherical[i], &b = d.spherical[j];
            if (b.size() == a.size() + 1 && std::includes(b.begin(), b.end(), a.begin(), a.end()))
                os << "  s" << i << " -> s" << j << ";\n";
        }
    os << "}\n";
    return os.str();
}

namespace {

using Cx = std::complex<double>;

// orientation-preserving isometry z -> (a z + b) / (c z + d)
struct Mobius {
    Cx a{1}, b{0}, c{0}, d{1};
    Mobius operator*(const Mobius& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Cx operator()(Cx z) const { return (a * z + b) / (c * z + d); }
};

// rotation by theta about the image of 0 under move
Mobius rotation_about(const Mobius& move, const Mobius& move_inv, double theta) {
    return move * Mobius{std::polar(1.0, theta), 0, 0, 1} * move_inv;
}

}  // namespace

std::string tiling_svg(const TilingBall& ball, int size_px) {
    const TriangleGroup& G = ball.store->group();
    const double pi = std::acos(-1.0);
    const double A = pi / G.p, B = pi / G.q, C = pi / G.r;
    // place the a-centre at 0 and the c-centre on the positive real axis
    Mobius to_c, from_c;
    const double cosd = (std::cos(B) + std::cos(A) * std::cos(C)) / (std::sin(A) * std::sin(C));
    if (G.kind == GeometryKind::euclidean) {
        to_c = {1, 1, 0, 1}, from_c = {1, -1, 0, 1};
    } else if (G.kind == GeometryKind::hyperbolic) {
        double t = std::tanh(std::acosh(cosd) / 2);
        to_c = {1, t, t, 1}, from_c = {1, -t, -t, 1};
    } else {
        double t = std::tan(std::acos(cosd) / 2);  // stereographic
        to_c = {1, t, -t, 1}, from_c = {1, -t, t, 1};
    }
    Mobius ma{std::polar(1.0, 2 * A), 0, 0, 1};
    Mobius mc = rotation_about(to_c, from_c, 2 * C);
    // orientation: a c must have order q
    auto order_ok = [&](const Mobius& c) {
        Mobius m = ma * c, acc;
        for (int k = 0; k < G.q; ++k) acc = acc * m;
        Cx z(0.1, 0.05);
        return std::abs(acc(z) - z) < 1e-6;
    };
    if (!order_ok(mc)) mc = rotation_about(to_c, from_c, -2 * C);
    if (!order_ok(mc)) throw ArithmeticError("numeric triangle model failed to close up");
    auto inverse = [](const Mobius& m) { return Mobius{m.d, -m.b, -m.c, m.a}; };
    std::array<Mobius, 4> gen;
    gen[kA] = ma, gen[kAInv] = inverse(ma);
    gen[kC] = mc, gen[kCInv] = inverse(mc);
    // the q-centre: fixed point of a c nearest the origin
    Mobius ac = ma * mc;
    Cx qc;
    if (std::abs(ac.c) < 1e-12) {
        qc = ac.b / (ac.d - ac.a);
    } else {
        Cx disc = std::sqrt((ac.d - ac.a) * (ac.d - ac.a) + 4.0 * ac.b * ac.c);
        Cx z1 = (ac.a - ac.d + disc) / (2.0 * ac.c), z2 = (ac.a - ac.d - disc) / (2.0 * ac.c);
        qc = std::abs(z1) < std::abs(z2) ? z1 : z2;
    }
    // a point inside the fundamental triangle
    const Cx x0 = 0.2 * to_c(0) + 0.2 * qc;

    std::unordered_map<Index, Cx> pos;
    for (Index v : ball.vertices) {
        Mobius m;
        for (int x : ball.store->section_letters(v)) m = m * gen[static_cast<size_t>(x)];
        pos[v] = m(x0);
    }
    double extent = 1;
    if (G.kind != GeometryKind::hyperbolic) {
        extent = 0;
        for (const auto& [v, z] : pos) extent = std::max(extent, std::abs(z));
        extent *= 1.05;
    }
    const double half = size_px / 2.0;
    auto X = [&](Cx z) { return half + half * z.real() / extent; };
    auto Y = [&](Cx z) { return half - half * z.imag() / extent; };
    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px << "\" height=\"" << size_px
       << "\" viewBox=\"0 0 " << size_px << " " << size_px << "\">\n";
    os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (G.kind == GeometryKind::hyperbolic)
        os << "  <circle cx=\"" << half << "\" cy=\"" << half << "\" r=\"" << half << "\" fill=\"none\" stroke=\"#999\"/>\n";
    const char* fill[3] = {"#fdd49e", "#c7e9c0", "#c6dbef"};  // P, R, Q
    for (size_t i = 0; i < ball.faces.size(); ++i) {
        if (!ball.complete[i]) continue;
        const Face& f = ball.store->face(ball.faces[i]);
        os << "  <polygon class=\"" << to_string(f.type) << "\" fill=\"" << fill[static_cast<int>(f.type)]
           << "\" stroke=\"none\" points=\"";
        for (Index v : f.vertices) os << X(pos.at(v)) << "," << Y(pos.at(v)) << " ";
        os << "\"/>\n";
    }
    for (const EdgeRef& e : ball.edges) {
        Index w = ball.store->neighbor(e.tail, e.kind == 0 ? kA : kC);
        if (!pos.count(w)) continue;
        os << "  <line x1=\"" << X(pos[e.tail]) << "\" y1=\"" << Y(pos[e.tail]) << "\" x2=\"" << X(pos[w]) << "\" y2=\""
           << Y(pos[w]) << "\" stroke=\"" << (e.kind == 0 ? "#b30000" : "#006d2c") << "\" stroke-width=\"0.8\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace shephard
