#pragma once

#include "shephard/complex.hpp"
#include "shephard/dihedral.hpp"
#include "shephard/graph.hpp"
#include "shephard/tiling.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace shephard {

constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;  // std::map backed: keys come out sorted

// citation key -> "label, anchor"; the only place reference strings live
const std::map<std::string, std::string>& citation_table();
const std::string& citation(const std::string& key);

// whether a structural result applies, with the checks that fired
struct VerdictEntry {
    std::string key;
    Decision applies = Decision::no;
    std::vector<std::string> trace;
    std::string citation;
};

struct VerdictReport {
    std::string graph_name;
    ExtendedPresentationGraph graph;
    CriteriaProfile profile;
    std::vector<VerdictEntry> entries;
    std::vector<std::string> peripherals;   // "a-b (p,m,r)"
    std::vector<std::string> consequences;  // listed when the relative hyperbolicity entry applies
    std::optional<Cat0Certificate> certificate;
    bool partial = false;

    const VerdictEntry& entry(const std::string& key) const;  // throws std::out_of_range
};

VerdictReport build_verdict_report(const ExtendedPresentationGraph& g, int vertex_limit = 14);

// the same entry shape for a single dihedral group
std::vector<VerdictEntry> dihedral_verdicts(const DihedralClassification& c);

// ---------------------------------------------------------------- JSON

Json to_json(const DihedralClassification& c);
Json to_json(const VerdictReport& r);
Json to_json(const ShephardNormalForm& nf);
Json to_json(const OrderResult& o);
Json to_json(const GirthCertificate& c);
Json to_json(const CosetGraphBall& b, bool with_cells = false);
Json to_json(const FundamentalDomainData& d, const ExtendedPresentationGraph& g);
Json to_json(const Cat0Certificate& c, const ExtendedPresentationGraph& g);
Json to_json(const TilingBall& b);
// wraps a payload with schemaVersion and kind; dump() is byte-stable
Json envelope(const std::string& kind, Json payload);
std::string dump(const Json& j);

// ---------------------------------------------------------------- text

std::string render_text(const DihedralClassification& c);
std::string render_text(const VerdictReport& r);

// ---------------------------------------------------------------- figures

std::string to_dot(const CosetGraphBall& b);
std::string to_dot(const FundamentalDomainData& d, const ExtendedPresentationGraph& g);
// numeric picture of the Cayley graph with its faces (disk, plane or stereographic sphere)
std::string tiling_svg(const TilingBall& b, int size_px = 800);

}  // namespace shephard
