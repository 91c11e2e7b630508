#include "shephard/graph.hpp"

#include "shephard/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace shephard {

// ---------------------------------------------------------------- graph

int ExtendedPresentationGraph::add_vertex(const std::string& id, int label) {
    if (id.empty()) throw InputError("empty vertex id");
    if (index_.count(id)) throw InputError("duplicate vertex '" + id + "'");
    if (label != kInfiniteLabel && label < 2) throw InputError("vertex label of '" + id + "' must be >= 2 or inf");
    int k = size();
    vertices_.push_back({id, label});
    index_[id] = k;
    for (auto& row : label_) row.push_back(0);
    label_.emplace_back(static_cast<size_t>(k + 1), 0);
    return k;
}

void ExtendedPresentationGraph::add_edge(int a, int b, int label) {
    if (a < 0 || b < 0 || a >= size() || b >= size()) throw InputError("edge endpoint out of range");
    const std::string desc = "edge " + vertex(a).id + " " + vertex(b).id;
    if (a == b) throw InputError(desc + ": loops are not allowed");
    if (label < 2) throw InputError(desc + ": edge label must be >= 2");
    if (edge_label(a, b)) throw InputError("duplicate " + desc);
    if (label % 2 == 1 && vertex(a).label != vertex(b).label)
        throw InputError(desc + ": odd edge label " + std::to_string(label) +
                         " requires equal vertex labels");
    if (a > b) std::swap(a, b);
    edges_.push_back({a, b, label});
    label_[static_cast<size_t>(a)][static_cast<size_t>(b)] = label;
    label_[static_cast<size_t>(b)][static_cast<size_t>(a)] = label;
}

std::optional<int> ExtendedPresentationGraph::find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int ExtendedPresentationGraph::edge_label(int i, int j) const {
    return label_[static_cast<size_t>(i)][static_cast<size_t>(j)];
}

bool ExtendedPresentationGraph::all_vertex_labels_finite() const {
    return std::all_of(vertices_.begin(), vertices_.end(), [](const GraphVertex& v) { return v.finite(); });
}

ExtendedPresentationGraph ExtendedPresentationGraph::induced(const std::vector<int>& subset) const {
    ExtendedPresentationGraph h;
    h.name = name;
    for (int v : subset) h.add_vertex(vertex(v).id, vertex(v).label);
    for (size_t i = 0; i < subset.size(); ++i)
        for (size_t j = i + 1; j < subset.size(); ++j)
            if (int m = edge_label(subset[i], subset[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j), m);
    return h;
}

ExtendedPresentationGraph ExtendedPresentationGraph::permuted(const std::vector<int>& perm) const {
    return induced(perm);
}

namespace {

std::string label_text(int label) { return label == kInfiniteLabel ? "inf" : std::to_string(label); }

}  // namespace

std::string ExtendedPresentationGraph::to_text() const {
    std::ostringstream os;
    if (!name.empty()) os << "graph " << name << "\n";
    for (const auto& v : vertices_) os << "vertex " << v.id << " " << label_text(v.label) << "\n";
    for (const auto& e : edges_) os << "edge " << vertex(e.a).id << " " << vertex(e.b).id << " " << e.label << "\n";
    return os.str();
}

std::string ExtendedPresentationGraph::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : vertices_) {
        nlohmann::json jv;
        jv["id"] = v.id;
        if (v.finite())
            jv["label"] = v.label;
        else
            jv["label"] = "inf";
        j["vertices"].push_back(jv);
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : edges_) j["edges"].push_back({{"a", vertex(e.a).id}, {"b", vertex(e.b).id}, {"label", e.label}});
    return j.dump();
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
    std::string text;
    int line, col;
};

[[noreturn]] void fail_at(int line, int col, const std::string& msg) {
    throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

int parse_label(const Token& t, bool allow_inf) {
    if (t.text == "inf" || t.text == "infinity") {
        if (!allow_inf) fail_at(t.line, t.col, "edge labels must be finite integers >= 2");
        return kInfiniteLabel;
    }
    if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](char c) { return c >= '0' && c <= '9'; }))
        fail_at(t.line, t.col, "expected a label, got '" + t.text + "'");
    if (t.text.size() > 9) fail_at(t.line, t.col, "label too large");
    int v = std::stoi(t.text);
    if (v < 2) fail_at(t.line, t.col, "label must be >= 2");
    return v;
}

bool valid_id(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_' || c == '-' || c == '.'; });
}

ExtendedPresentationGraph parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("json: ") + e.what());
    }
    auto label_of = [](const nlohmann::json& x, bool allow_inf) -> int {
        if (x.is_string()) {
            if (allow_inf && (x == "inf" || x == "infinity")) return kInfiniteLabel;
            throw InputError("json: bad label " + x.dump());
        }
        if (!x.is_number_integer() || x.get<long long>() < 2 || x.get<long long>() > 1000000000)
            throw InputError("json: label must be an integer >= 2");
        return x.get<int>();
    };
    try {
        ExtendedPresentationGraph g;
        if (j.contains("name") && !j["name"].is_null()) g.name = j.at("name").get<std::string>();
        for (const auto& v : j.at("vertices")) g.add_vertex(v.at("id").get<std::string>(), label_of(v.at("label"), true));
        if (j.contains("edges"))
            for (const auto& e : j.at("edges")) {
                auto a = g.find(e.at("a").get<std::string>()), b = g.find(e.at("b").get<std::string>());
                if (!a || !b) throw InputError("json: edge refers to an unknown vertex");
                g.add_edge(*a, *b, label_of(e.at("label"), false));
            }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("json: ") + e.what());
    }
}

}  // namespace

ExtendedPresentationGraph parse_graph(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json(text);

    // split into statements of tokens
    std::vector<std::vector<Token>> statements(1);
    int line = 1, col = 1;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            statements.emplace_back();
            ++line, col = 1, ++i;
        } else if (c == ';') {
            statements.emplace_back();
            ++col, ++i;
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (c == ' ' || c == '\t' || c == '\r') {
            ++col, ++i;
        } else {
            Token t{"", line, col};
            while (i < text.size() && !std::strchr(" \t\r\n;#", text[i])) t.text += text[i++], ++col;
            statements.back().push_back(t);
        }
    }

    ExtendedPresentationGraph g;
    bool named = false;
    for (const auto& st : statements) {
        if (st.empty()) continue;
        const Token& kw = st[0];
        auto need = [&](size_t n) {
            if (st.size() != n)
                fail_at(kw.line, kw.col, "'" + kw.text + "' takes " + std::to_string(n - 1) + " arguments, got " +
                                             std::to_string(st.size() - 1));
        };
        try {
            if (kw.text == "graph") {
                need(2);
                if (named) fail_at(kw.line, kw.col, "graph name given twice");
                g.name = st[1].text, named = true;
            } else if (kw.text == "vertex") {
                need(3);
                if (!valid_id(st[1].text)) fail_at(st[1].line, st[1].col, "invalid vertex id '" + st[1].text + "'");
                g.add_vertex(st[1].text, parse_label(st[2], true));
            } else if (kw.text == "edge") {
                need(4);
                auto a = g.find(st[1].text), b = g.find(st[2].text);
                if (!a) fail_at(st[1].line, st[1].col, "unknown vertex '" + st[1].text + "'");
                if (!b) fail_at(st[2].line, st[2].col, "unknown vertex '" + st[2].text + "'");
                g.add_edge(*a, *b, parse_label(st[3], false));
            } else {
                fail_at(kw.line, kw.col, "unknown statement '" + kw.text + "'");
            }
        } catch (const InputError& e) {
            std::string msg = e.what();
            if (msg.rfind("line ", 0) == 0) throw;
            fail_at(kw.line, kw.col, msg);
        }
    }
    return g;
}

ExtendedPresentationGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read graph file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_graph(ss.str());
}

// ---------------------------------------------------------------- Coxeter classes

std::string to_string(CoxeterKind k) {
    switch (k) {
        case CoxeterKind::spherical: return "spherical";
        case CoxeterKind::affine: return "affine";
        default: return "indefinite";
    }
}

std::string to_string(Decision d) {
    switch (d) {
        case Decision::yes: return "yes";
        case Decision::no: return "no";
        default: return "undecided";
    }
}

namespace {

using Matrix = std::vector<std::vector<CyclotomicReal>>;

// 2B with B the cosine matrix; signs are unaffected by the factor 2
Matrix twice_cosine_matrix(const ExtendedPresentationGraph& g, const VertexSet& s) {
    long long L = 2;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            if (int m = g.edge_label(s[i], s[j])) L = std::lcm(L, static_cast<long long>(m));
    FieldPtr f = CyclotomicField::get(static_cast<int>(L));
    const size_t n = s.size();
    Matrix M(n, std::vector<CyclotomicReal>(n, CyclotomicReal(f, Rational(0))));
    for (size_t i = 0; i < n; ++i) {
        M[i][i] = CyclotomicReal(f, Rational(2));
        for (size_t j = i + 1; j < n; ++j) {
            int m = g.edge_label(s[i], s[j]);
            CyclotomicReal x = m ? -CyclotomicReal::two_cos_in(f, L / m) : CyclotomicReal(f, Rational(-2));
            M[i][j] = M[j][i] = x;
        }
    }
    return M;
}

// fraction-free elimination: row_r <- a_cc row_r - a_rc row_c scales the
// determinant by a_cc, whose sign is tracked; no field inverses (those are
// very slow in high degree)
int det_sign(Matrix M) {
    const size_t n = M.size();
    int sign = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && M[piv][c].is_zero()) ++piv;
        if (piv == n) return 0;
        if (piv != c) std::swap(M[piv], M[c]), sign = -sign;
        const int s = sign_of(M[c][c]);
        sign *= s;
        for (size_t r = c + 1; r < n; ++r) {
            if (M[r][c].is_zero()) continue;
            CyclotomicReal f = M[r][c];
            for (size_t k = c; k < n; ++k) M[r][k] = M[c][c] * M[r][k] - f * M[c][k];
            sign *= s;
        }
    }
    return sign;
}

}  // namespace

CoxeterClass classify_coxeter_subset(const ExtendedPresentationGraph& g, const VertexSet& s) {
    if (s.empty()) throw InputError("empty vertex subset");
    Matrix M = twice_cosine_matrix(g, s);
    const size_t n = s.size();
    CoxeterClass out;
    for (size_t k = 1; k <= n; ++k) {
        Matrix lead(k);
        for (size_t i = 0; i < k; ++i) lead[i].assign(M[i].begin(), M[i].begin() + static_cast<long>(k));
        out.minor_signs.push_back(det_sign(std::move(lead)));
    }
    if (std::all_of(out.minor_signs.begin(), out.minor_signs.end(), [](int x) { return x > 0; })) {
        out.kind = CoxeterKind::spherical;
        return out;
    }
    // symmetric elimination with positive diagonal pivots decides semidefiniteness
    std::vector<bool> active(n, true);
    size_t kernel = 0, remaining = n;
    while (remaining) {
        std::optional<size_t> pivot;
        for (size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            int sg = sign_of(M[i][i]);
            if (sg < 0) return out.kind = CoxeterKind::indefinite, out;
            if (sg == 0) {
                for (size_t j = 0; j < n; ++j)
                    if (active[j] && !M[i][j].is_zero()) return out.kind = CoxeterKind::indefinite, out;
                active[i] = false, --remaining, ++kernel;
            } else if (!pivot) {
                pivot = i;
            }
        }
        if (!pivot) break;
        // Schur complement scaled by the positive pivot: same inertia, no division
        size_t p = *pivot;
        active[p] = false, --remaining;
        Matrix next = M;
        for (size_t j = 0; j < n; ++j) {
            if (!active[j]) continue;
            for (size_t k = j; k < n; ++k)
                if (active[k]) next[j][k] = next[k][j] = M[p][p] * M[j][k] - M[j][p] * M[p][k];
        }
        M = std::move(next);
    }
    out.kind = kernel ? CoxeterKind::affine : CoxeterKind::spherical;
    return out;
}

namespace {

struct SubsetScan {
    std::vector<VertexSet> spherical;                               // by size, lexicographic
    std::vector<std::pair<VertexSet, CoxeterKind>> minimal_non_spherical;
};

// Level-wise: a set is classified only when every one-smaller subset is spherical.
SubsetScan scan_subsets(const ExtendedPresentationGraph& g, std::size_t max_size) {
    SubsetScan out;
    out.spherical.push_back({});
    std::vector<VertexSet> level{{}};
    std::set<VertexSet> previous{{}};
    for (std::size_t k = 1; k <= max_size && !level.empty(); ++k) {
        std::vector<VertexSet> next;
        for (const VertexSet& S : level) {
            int start = S.empty() ? 0 : S.back() + 1;
            for (int v = start; v < g.size(); ++v) {
                VertexSet T = S;
                T.push_back(v);
                bool children = true;
                for (size_t drop = 0; drop + 1 < T.size() && children; ++drop) {
                    VertexSet c = T;
                    c.erase(c.begin() + static_cast<long>(drop));
                    children = previous.count(c) > 0;
                }
                if (!children) continue;
                CoxeterKind kind;
                if (k == 1)
                    kind = CoxeterKind::spherical;
                else if (k == 2)
                    kind = g.adjacent(T[0], T[1]) ? CoxeterKind::spherical : CoxeterKind::affine;
                else
                    kind = classify_coxeter_subset(g, T).kind;
                if (kind == CoxeterKind::spherical)
                    next.push_back(T);
                else
                    out.minimal_non_spherical.push_back({T, kind});
            }
        }
        previous = std::set<VertexSet>(next.begin(), next.end());
        out.spherical.insert(out.spherical.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

bool subset_of(const VertexSet& a, const VertexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

std::vector<VertexSet> spherical_subsets(const ExtendedPresentationGraph& g) {
    return scan_subsets(g, static_cast<size_t>(g.size())).spherical;
}

bool is_two_dimensional(const ExtendedPresentationGraph& g) {
    for (const auto& S : scan_subsets(g, 3).spherical)
        if (S.size() >= 3) return false;
    return true;
}

bool is_triangle_free(const ExtendedPresentationGraph& g) {
    for (const auto& e : g.edges())
        for (int v = 0; v < g.size(); ++v)
            if (v != e.a && v != e.b && g.adjacent(v, e.a) && g.adjacent(v, e.b)) return false;
    return true;
}

namespace {

std::optional<std::pair<VertexSet, VertexSet>> two_square(const ExtendedPresentationGraph& g) {
    for (int a = 0; a < g.size(); ++a)
        for (int c = a + 1; c < g.size(); ++c) {
            VertexSet common;
            for (int b = 0; b < g.size(); ++b)
                if (b != a && b != c && g.edge_label(a, b) == 2 && g.edge_label(c, b) == 2) common.push_back(b);
            if (common.size() >= 2) return std::make_pair(VertexSet{a, c}, VertexSet{common[0], common[1]});
        }
    return std::nullopt;
}

void bron_kerbosch(const ExtendedPresentationGraph& g, VertexSet R, VertexSet P, VertexSet X,
                   std::vector<VertexSet>& out) {
    if (P.empty() && X.empty()) {
        std::sort(R.begin(), R.end());
        out.push_back(R);
        return;
    }
    int pivot = !P.empty() ? P[0] : X[0];
    size_t best = 0;
    for (const VertexSet* src : {&P, &X})
        for (int u : *src) {
            size_t cnt = static_cast<size_t>(std::count_if(P.begin(), P.end(), [&](int v) { return g.adjacent(u, v); }));
            if (cnt >= best) best = cnt, pivot = u;
        }
    VertexSet candidates;
    for (int v : P)
        if (!g.adjacent(pivot, v)) candidates.push_back(v);
    for (int v : candidates) {
        VertexSet R2 = R, P2, X2;
        R2.push_back(v);
        for (int w : P)
            if (g.adjacent(v, w)) P2.push_back(w);
        for (int w : X)
            if (g.adjacent(v, w)) X2.push_back(w);
        bron_kerbosch(g, R2, P2, X2, out);
        P.erase(std::find(P.begin(), P.end(), v));
        X.push_back(v);
    }
}

}  // namespace

bool has_all_two_square(const ExtendedPresentationGraph& g) { return two_square(g).has_value(); }

bool is_fc_type(const ExtendedPresentationGraph& g) {
    if (g.size() == 0) return true;
    VertexSet all(static_cast<size_t>(g.size()));
    std::iota(all.begin(), all.end(), 0);
    std::vector<VertexSet> cliques;
    bron_kerbosch(g, {}, all, {}, cliques);
    for (const auto& c : cliques)
        if (c.size() >= 3 && classify_coxeter_subset(g, c).kind != CoxeterKind::spherical) return false;
    return true;
}

bool is_join_irreducible(const ExtendedPresentationGraph& g) {
    const int n = g.size();
    if (n <= 1) return true;
    std::vector<bool> seen(static_cast<size_t>(n), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < n; ++v)
            if (!seen[static_cast<size_t>(v)] && v != u && g.edge_label(u, v) != 2) {
                seen[static_cast<size_t>(v)] = true, ++count;
                stack.push_back(v);
            }
    }
    return count == n;
}

HyperbolicityCheck check_hyperbolic_type(const ExtendedPresentationGraph& g, int vertex_limit) {
    HyperbolicityCheck out;
    if (is_triangle_free(g)) {
        out.method = "triangle-free-squares";
        out.commuting_witness = two_square(g);
        out.verdict = out.commuting_witness ? Decision::no : Decision::yes;
        return out;
    }
    if (g.size() > vertex_limit) {
        out.method = "size-limit";
        out.verdict = Decision::undecided;
        return out;
    }
    return moussong_subset_check(g);
}

HyperbolicityCheck moussong_subset_check(const ExtendedPresentationGraph& g) {
    HyperbolicityCheck out;
    out.method = "moussong-subsets";
    SubsetScan scan = scan_subsets(g, static_cast<size_t>(g.size()));
    // (a) an irreducible affine subset of rank >= 3 is exactly a minimal
    // non-spherical subset of size >= 3 whose class is affine
    for (const auto& [S, kind] : scan.minimal_non_spherical)
        if (S.size() >= 3 && kind == CoxeterKind::affine) {
            out.affine_witness = S;
            out.verdict = Decision::no;
            return out;
        }
    // (b) it suffices to test minimal S1 against the vertices 2-joined to all of S1
    for (const auto& [S1, k1] : scan.minimal_non_spherical) {
        VertexSet N;
        for (int v = 0; v < g.size(); ++v) {
            if (std::binary_search(S1.begin(), S1.end(), v)) continue;
            if (std::all_of(S1.begin(), S1.end(), [&](int u) { return g.edge_label(u, v) == 2; })) N.push_back(v);
        }
        for (const auto& [S2, k2] : scan.minimal_non_spherical)
            if (subset_of(S2, N)) {
                out.commuting_witness = std::make_pair(S1, S2);
                out.verdict = Decision::no;
                return out;
            }
    }
    out.verdict = Decision::yes;
    return out;
}

Decision is_hyperbolic_type(const ExtendedPresentationGraph& g, int vertex_limit) {
    return check_hyperbolic_type(g, vertex_limit).verdict;
}

Rational edge_h(const ExtendedPresentationGraph& g, const GraphEdge& e) {
    auto inv = [](int label) { return label == kInfiniteLabel ? Rational(0) : Rational(1, label); };
    return inv(g.vertex(e.a).label) + Rational(2, e.label) + inv(g.vertex(e.b).label);
}

CriteriaProfile compute_criteria_profile(const ExtendedPresentationGraph& g, int vertex_limit) {
    CriteriaProfile c;
    c.two_dimensional = is_two_dimensional(g);
    c.triangle_free = is_triangle_free(g);
    c.has_all_two_square = has_all_two_square(g);
    c.hyperbolicity = check_hyperbolic_type(g, vertex_limit);
    c.hyperbolic_type = c.hyperbolicity.verdict;
    c.fc_type = is_fc_type(g);
    c.irreducible = is_join_irreducible(g);
    c.all_vertex_labels_finite = g.all_vertex_labels_finite();
    for (size_t i = 0; i < g.edges().size(); ++i) {
        const GraphEdge& e = g.edges()[i];
        Rational h = edge_h(g, e);
        bool finite = g.vertex(e.a).finite() && g.vertex(e.b).finite();
        // an infinite vertex label already makes the edge group infinite (e.g. Z x Z/2)
        if (h <= 1 || !finite) c.peripheral_edges.push_back(static_cast<int>(i));
        if (h <= 1 && finite) c.poison_edges.push_back(static_cast<int>(i));
        if (h == 1 && finite) c.equality_edges.push_back(static_cast<int>(i));
    }
    return c;
}

}  // namespace shephard
