// shephard: command-line front end (classify, word, girth, complex, export, report)

#include "shephard/complex.hpp"
#include "shephard/dihedral.hpp"
#include "shephard/errors.hpp"
#include "shephard/graph.hpp"
#include "shephard/report.hpp"
#include "shephard/tiling.hpp"
#include "shephard/triangle_group.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <random>

using namespace shephard;

namespace {

std::atomic<bool> g_interrupt{false};

extern "C" void on_sigint(int) { g_interrupt.store(true); }

enum Exit { kOk = 0, kInput = 2, kBudget = 3, kInapplicable = 4 };

struct Globals {
    std::size_t budget = 2000000;
    std::optional<int> radius;
    bool json = false;
    std::uint64_t seed = 1;
};

struct Triple {
    int p = 0, q = 0, r = 0;
};

Triple parse_triple(const std::vector<std::string>& args, size_t first = 0) {
    if (args.size() < first + 3) throw InputError("expected a triple p q r");
    auto num = [](const std::string& s) {
        try {
            size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw InputError("not an integer label: '" + s + "'");
        }
    };
    Triple t{num(args[first]), num(args[first + 1]), num(args[first + 2])};
    classify(t.p, t.q, t.r);  // validates
    return t;
}

bool looks_like_triple(const std::vector<std::string>& args) {
    return args.size() == 3 && std::all_of(args.begin(), args.end(), [](const std::string& s) {
               return !s.empty() && std::all_of(s.begin(), s.end(), ::isdigit);
           });
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

void emit(const Globals& G, const std::string& kind, const Json& payload, const std::string& text) {
    if (G.json)
        std::cout << dump(envelope(kind, payload));
    else
        std::cout << text;
}

std::string partial_mark(bool partial) { return partial ? "  [PARTIAL: interrupted]\n" : ""; }

// ---------------------------------------------------------------- commands

int cmd_classify(const Globals& G, const std::vector<std::string>& args, bool certify, int vertex_limit) {
    if (looks_like_triple(args)) {
        Triple t = parse_triple(args);
        auto c = classify(t.p, t.q, t.r);
        emit(G, "classification", to_json(c), render_text(c));
        return kOk;
    }
    if (args.size() != 1) throw InputError("classify takes a triple p q r or one graph file");
    auto g = load_graph_file(args[0]);
    auto report = build_verdict_report(g, vertex_limit);
    if (certify && report.profile.two_dimensional && report.profile.all_vertex_labels_finite) {
        RadiusPolicy pol;
        pol.fixed = G.radius;
        pol.budget = G.budget;
        report.certificate = cat0_report(g, pol, &g_interrupt);
        report.partial = report.certificate->interrupted;
    }
    emit(G, "verdict-report", to_json(report), render_text(report));
    return kOk;
}

SyllableWord random_word(std::mt19937_64& rng, const Triple& t, int max_syllables) {
    std::uniform_int_distribution<int> len(0, max_syllables);
    std::vector<Syllable> syl;
    int n = len(rng);
    char letter = std::uniform_int_distribution<int>(0, 1)(rng) ? 's' : 't';
    for (int i = 0; i < n; ++i) {
        int order = letter == 's' ? t.p : t.r;
        long long e = std::uniform_int_distribution<int>(1, order - 1)(rng);
        if (std::uniform_int_distribution<int>(0, 1)(rng)) e = -e;
        syl.push_back({letter, e});
        letter = letter == 's' ? 't' : 's';
    }
    return SyllableWord(syl);
}

struct WordArgs {
    std::string trivial, order, normalform;
    std::vector<std::string> equal;
    int sweep = 0;
    long long cutoff = 1000;
};

int cmd_word(const Globals& G, const std::vector<std::string>& args, const WordArgs& W) {
    Triple t = parse_triple(args);
    DihedralSession session(t.p, t.q, t.r, G.budget);
    Json out{{"triple", {t.p, t.q, t.r}}};
    std::ostringstream text;
    int queries = 0;
    if (!W.trivial.empty()) {
        bool v = session.is_trivial(SyllableWord::parse(W.trivial));
        out["trivial"] = v, ++queries;
        text << (v ? "true" : "false") << "\n";
    }
    if (!W.equal.empty()) {
        if (W.equal.size() != 2) throw InputError("--equal takes two words");
        bool v = session.are_equal(SyllableWord::parse(W.equal[0]), SyllableWord::parse(W.equal[1]));
        out["equal"] = v, ++queries;
        text << (v ? "true" : "false") << "\n";
    }
    if (!W.order.empty()) {
        auto o = session.element_order(SyllableWord::parse(W.order), W.cutoff);
        out["order"] = to_json(o), ++queries;
        text << (o.kind == OrderResult::Kind::finite ? std::to_string(o.order)
                 : o.kind == OrderResult::Kind::infinite ? std::string("infinite")
                                                         : std::string("exceeds cutoff"))
             << (o.reason.empty() ? "" : "  (" + o.reason + ")") << "\n";
    }
    if (!W.normalform.empty()) {
        auto nf = session.normalize(SyllableWord::parse(W.normalform));
        out["normalForm"] = to_json(nf), ++queries;
        text << "deltaImage = " << (nf.delta == 0 ? "identity" : nf.section_word()) << ", z = " << nf.z << "\n";
    }
    if (W.sweep > 0) {
        std::mt19937_64 rng(G.seed);
        int agree = 0, ran = 0;
        for (int i = 0; i < W.sweep && !g_interrupt.load(); ++i, ++ran) {
            auto u = random_word(rng, t, 12), v = random_word(rng, t, 12);
            if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) v = u;  // keep some true pairs
            agree += session.are_equal(u, v) == brute_force_equal(t.p, t.q, t.r, u, v) ? 1 : 0;
        }
        out["sweep"] = Json{{"seed", G.seed}, {"pairs", ran}, {"agree", agree}, {"partial", ran < W.sweep}};
        ++queries;
        text << "sweep seed " << G.seed << ": " << agree << "/" << ran << " pairs agree\n" << partial_mark(ran < W.sweep);
    }
    if (queries == 0) throw InputError("word needs one of --trivial, --equal, --order, --normalform, --sweep");
    emit(G, "word", out, text.str());
    return kOk;
}

int cmd_girth(const Globals& G, const std::vector<std::string>& args, int max_syllables) {
    Triple t = parse_triple(args);
    auto c = certify_girth(t.p, t.q, t.r, max_syllables, &g_interrupt, G.budget);
    std::ostringstream text;
    if (c.trivial_below_bound.empty())
        text << "no trivial word below " << c.bound << "; bound 2q = " << c.bound
             << (c.certified ? " certified" : " not certified") << " (lengths <= " << c.examined_through
             << " examined)\n";
    else
        text << c.trivial_below_bound.size() << " trivial word(s) below 2q = " << c.bound << ", e.g. "
             << c.trivial_below_bound.front().to_string() << "\n";
    if (c.minimal_trivial_length)
        text << "shortest trivial cyclically reduced word: " << *c.minimal_trivial_length << " syllables ("
             << c.minimal_trivial_witness->to_string() << ")\n";
    text << partial_mark(c.interrupted);
    emit(G, "girth", to_json(c), text.str());
    return kOk;
}

struct Built {
    Json json;
    std::string text, dot, svg;
};

Built build_object(const Globals& G, const std::string& what, const std::vector<std::string>& args) {
    Built b;
    std::ostringstream text;
    if (what == "theta-hat" || what == "coset-geometry") {
        Triple t = parse_triple(args);
        int radius = G.radius.value_or(what == "theta-hat" ? 8 : 4);
        auto ball = what == "theta-hat" ? build_theta_hat_ball(t.p, t.q, t.r, radius, G.budget, &g_interrupt)
                                        : build_coset_geometry_ball(t.p, t.q, t.r, radius, G.budget);
        b.json = to_json(ball);
        // full girth on small balls, otherwise only cycles up to 2q are searched
        std::optional<int> cap;
        if (ball.vertices.size() > 20000) cap = 2 * t.q;
        auto gr = girth_within_ball(ball, cap);
        b.json["girth"] = gr.girth ? Json(*gr.girth) : Json(nullptr);
        b.json["girthCap"] = cap ? Json(*cap) : Json(nullptr);
        text << what << " ball Sh(" << t.p << "," << t.q << "," << t.r << ") radius " << ball.radius << ": "
             << ball.vertices.size() << " vertices, " << ball.edges.size() << " edges, bipartite "
             << (ball.is_bipartite() ? "yes" : "no") << ", interior valences "
             << (ball.check_interior_valences() >= 0 ? "ok" : "VIOLATED") << "\n  girth within ball: "
             << (gr.girth ? std::to_string(*gr.girth) : std::string(cap ? "> " + std::to_string(*cap) : "none"))
             << (ball.central || ball.finite_group ? "  (bound 2q = " + std::to_string(2 * t.q) + ")" : "") << "\n"
             << partial_mark(ball.interrupted);
        b.dot = to_dot(ball);
    } else if (what == "tiling") {
        Triple t = parse_triple(args);
        auto c = classify(t.p, t.q, t.r);
        auto ball = build_tiling_ball(triangle_group(c.tri_p, c.tri_q, c.tri_r), G.radius.value_or(4), G.budget);
        b.json = to_json(ball);
        text << "tiling of Delta(" << c.tri_p << "," << c.tri_q << "," << c.tri_r << ") radius " << ball.radius << ": "
             << ball.vertices.size() << " vertices, " << ball.faces.size() << " faces, V-E+F (complete) = "
             << ball.euler_characteristic_complete() << "\n";
        b.svg = tiling_svg(ball);
    } else if (what == "domain" || what == "certificate") {
        if (args.size() != 1) throw InputError(what + " takes one graph file");
        auto g = load_graph_file(args[0]);
        if (what == "domain") {
            auto d = build_fundamental_domain(g);
            b.json = to_json(d, g);
            text << "fundamental domain: " << d.spherical.size() << " spherical subsets, " << d.cells.size()
                 << " cells, dimension " << d.dimension() << ", Euler characteristic " << d.euler_characteristic()
                 << "\n";
            b.dot = to_dot(d, g);
        } else {
            RadiusPolicy pol;
            pol.fixed = G.radius;
            pol.budget = G.budget;
            auto c = cat0_report(g, pol, &g_interrupt);
            if (c.verdict == CertificateVerdict::inapplicable && !c.two_dimensional)
                throw Inapplicable("link-girth certificate needs a 2-dimensional graph");
            b.json = to_json(c, g);
            text << "link-girth certificate: " << to_string(c.verdict) << "\n";
            for (const auto& e : c.edges)
                text << "  edge " << e.edge << " (" << e.p << "," << e.m << "," << e.r << "): need girth "
                     << e.required_girth << ", radius " << e.radius << ", shortest "
                     << (e.shortest_cycle ? std::to_string(*e.shortest_cycle) : std::string("none")) << ", "
                     << (e.satisfied ? "ok" : "REFUTED") << "\n";
            text << "  " << c.hyperbolicity_annotation << "\n" << partial_mark(c.interrupted);
        }
    } else {
        throw InputError("unknown object '" + what + "'");
    }
    b.text = text.str();
    return b;
}

int cmd_complex(const Globals& G, const std::string& what, const std::vector<std::string>& args) {
    auto b = build_object(G, what, args);
    emit(G, what, b.json, b.text);
    return kOk;
}

int cmd_export(const Globals& G, const std::string& what, const std::vector<std::string>& args,
               const std::string& svg, const std::string& dot, const std::string& out) {
    auto b = build_object(G, what, args);
    if (!svg.empty()) {
        if (b.svg.empty()) throw Inapplicable("SVG export is available for tilings only");
        write_file(svg, b.svg);
    }
    if (!dot.empty()) {
        if (b.dot.empty()) throw Inapplicable("DOT export is available for graphs (balls, domains) only");
        write_file(dot, b.dot);
    }
    if (!out.empty()) write_file(out, dump(envelope(what, b.json)));
    if (svg.empty() && dot.empty() && out.empty())
        std::cout << dump(envelope(what, b.json));
    else
        emit(G, what, b.json, b.text);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computation in 2-dimensional Shephard groups"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals G;
    app.add_option("--budget", G.budget, "element budget for enumerations")->check(CLI::PositiveNumber);
    app.add_option("--radius", G.radius, "ball radius");
    app.add_flag("--json", G.json, "JSON output (sorted keys, schemaVersion)");
    app.add_option("--seed", G.seed, "seed for randomized sweeps");

    std::vector<std::string> args;
    auto* classify_cmd = app.add_subcommand("classify", "classify a triple p q r or a graph file");
    bool certify = false;
    int vertex_limit = 14;
    classify_cmd->add_option("input", args, "p q r, or a graph file")->required();
    classify_cmd->add_flag("--certify", certify, "attach the link-girth certificate");
    classify_cmd->add_option("--vertex-limit", vertex_limit, "size limit for the hyperbolicity subset scan");

    auto* word_cmd = app.add_subcommand("word", "word problem queries in Sh(p,q,r)");
    WordArgs W;
    word_cmd->add_option("triple", args, "p q r")->required()->expected(3);
    word_cmd->add_option("--trivial", W.trivial, "is the word trivial");
    word_cmd->add_option("--equal", W.equal, "are two words equal")->expected(2);
    word_cmd->add_option("--order", W.order, "order of the element");
    word_cmd->add_option("--normalform", W.normalform, "normal form (delta image, z)");
    word_cmd->add_option("--sweep", W.sweep, "compare against the independent oracle on N random pairs");
    word_cmd->add_option("--cutoff", W.cutoff, "order search cutoff");

    auto* girth_cmd = app.add_subcommand("girth", "exhaustive search for short trivial words");
    int max_syllables = 0;
    girth_cmd->add_option("triple", args, "p q r")->required()->expected(3);
    girth_cmd->add_option("--max", max_syllables, "syllable bound (default 2q - 1)");

    const std::vector<std::string> objects{"theta-hat", "coset-geometry", "tiling", "domain", "certificate"};
    std::string what;
    auto* complex_cmd = app.add_subcommand("complex", "build a ball or complex and report its invariants");
    complex_cmd->add_option("object", what)->required()->check(CLI::IsMember(objects));
    complex_cmd->add_option("input", args, "p q r, or a graph file")->required();

    auto* export_cmd = app.add_subcommand("export", "write JSON, DOT or SVG");
    std::string svg, dot, out;
    export_cmd->add_option("object", what)->required()->check(CLI::IsMember(objects));
    export_cmd->add_option("input", args, "p q r, or a graph file")->required();
    export_cmd->add_option("--svg", svg, "SVG output (tilings)");
    export_cmd->add_option("--dot", dot, "DOT output (balls, domains)");
    export_cmd->add_option("--out", out, "JSON output file");

    auto* report_cmd = app.add_subcommand("report", "full verdict report for a graph file");
    std::string graph_file;
    bool no_certify = false;
    report_cmd->add_option("graph", graph_file)->required();
    report_cmd->add_flag("--no-certify", no_certify, "skip the link-girth certificate");
    report_cmd->add_option("--vertex-limit", vertex_limit, "size limit for the hyperbolicity subset scan");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    std::signal(SIGINT, on_sigint);
    try {
        if (*classify_cmd) return cmd_classify(G, args, certify, vertex_limit);
        if (*word_cmd) return cmd_word(G, args, W);
        if (*girth_cmd) return cmd_girth(G, args, max_syllables);
        if (*complex_cmd) return cmd_complex(G, what, args);
        if (*export_cmd) return cmd_export(G, what, args, svg, dot, out);
        if (*report_cmd) return cmd_classify(G, {graph_file}, !no_certify, vertex_limit);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const Inapplicable& e) {
        std::cerr << "inapplicable: " << e.what() << "\n";
        return kInapplicable;
    }
    return kOk;
}
