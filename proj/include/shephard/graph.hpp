#pragma once

#include "shephard/cyclotomic.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace shephard {

// vertex label 0 encodes infinity (Artin generator)
constexpr int kInfiniteLabel = 0;

struct GraphVertex {
    std::string id;
    int label = 2;
    bool finite() const { return label != kInfiniteLabel; }
};

struct GraphEdge {
    int a = 0, b = 0;  // vertex indices, a < b
    int label = 2;
};

class ExtendedPresentationGraph {
public:
    std::string name;

    int add_vertex(const std::string& id, int label);  // throws InputError on duplicates / bad labels
    void add_edge(int a, int b, int label);            // throws InputError on loops, duplicates, odd mismatch

    int size() const { return static_cast<int>(vertices_.size()); }
    const std::vector<GraphVertex>& vertices() const { return vertices_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    const GraphVertex& vertex(int i) const { return vertices_[static_cast<size_t>(i)]; }
    std::optional<int> find(const std::string& id) const;
    // 0 when i, j are not adjacent (the Coxeter label is then infinity)
    int edge_label(int i, int j) const;
    bool adjacent(int i, int j) const { return edge_label(i, j) != 0; }
    bool all_vertex_labels_finite() const;

    // induced subgraph on the given vertex indices (kept in the given order)
    ExtendedPresentationGraph induced(const std::vector<int>& subset) const;
    // same graph with vertices permuted: new vertex k is old vertex perm[k]
    ExtendedPresentationGraph permuted(const std::vector<int>& perm) const;

    std::string to_text() const;
    std::string to_json() const;

private:
    std::vector<GraphVertex> vertices_;
    std::vector<GraphEdge> edges_;
    std::map<std::string, int> index_;
    std::vector<std::vector<int>> label_;  // adjacency matrix of edge labels
};

// Line grammar (statements separated by newlines or ';', '#' comments):
//   graph <name> | vertex <id> <label|inf> | edge <id> <id> <label>
// Input starting with '{' is read as JSON {name, vertices:[{id,label}], edges:[{a,b,label}]}.
// Errors are InputError with "line L, column C: ..." for the text form.
ExtendedPresentationGraph parse_graph(const std::string& text);
ExtendedPresentationGraph load_graph_file(const std::string& path);

// ---------------------------------------------------------------- Coxeter classes

using VertexSet = std::vector<int>;  // sorted vertex indices of an induced subgraph

enum class CoxeterKind { spherical, affine, indefinite };
std::string to_string(CoxeterKind k);

struct CoxeterClass {
    CoxeterKind kind = CoxeterKind::indefinite;
    std::vector<int> minor_signs;  // leading principal minors of the cosine matrix, in subset order
};

// exact test on B(i,j) = -cos(pi/m_ij) (m = infinity off edges); s nonempty
CoxeterClass classify_coxeter_subset(const ExtendedPresentationGraph& g, const VertexSet& s);

// all spherical subsets, the empty set included, ordered by size then lexicographically
std::vector<VertexSet> spherical_subsets(const ExtendedPresentationGraph& g);

bool is_two_dimensional(const ExtendedPresentationGraph& g);
bool is_triangle_free(const ExtendedPresentationGraph& g);
// some 4-cycle (not necessarily induced) has all four edges labelled 2
bool has_all_two_square(const ExtendedPresentationGraph& g);
// every complete subgraph is spherical
bool is_fc_type(const ExtendedPresentationGraph& g);
// the graph of pairs not joined by a 2-edge is connected
bool is_join_irreducible(const ExtendedPresentationGraph& g);

enum class Decision { no, yes, undecided };
std::string to_string(Decision d);

struct HyperbolicityCheck {
    Decision verdict = Decision::undecided;
    std::string method;                      // "moussong-subsets", "triangle-free-squares", "size-limit"
    std::optional<VertexSet> affine_witness;  // irreducible affine subset of rank >= 3
    std::optional<std::pair<VertexSet, VertexSet>> commuting_witness;
};

// Moussong criterion over vertex subsets; exponential, so guarded by vertex_limit
// except for triangle-free graphs, where it reduces to squares of 2-edges.
HyperbolicityCheck check_hyperbolic_type(const ExtendedPresentationGraph& g, int vertex_limit = 14);
// the subset scan alone, at any size
HyperbolicityCheck moussong_subset_check(const ExtendedPresentationGraph& g);
Decision is_hyperbolic_type(const ExtendedPresentationGraph& g, int vertex_limit = 14);

// 1/p_i + 2/m_ij + 1/p_j with 1/infinity = 0
Rational edge_h(const ExtendedPresentationGraph& g, const GraphEdge& e);

struct CriteriaProfile {
    bool two_dimensional = false;
    bool triangle_free = false;
    bool has_all_two_square = false;
    Decision hyperbolic_type = Decision::undecided;
    HyperbolicityCheck hyperbolicity;
    bool fc_type = false;
    bool irreducible = false;  // join criterion
    bool all_vertex_labels_finite = false;
    std::vector<int> peripheral_edges;  // infinite edge groups: h <= 1 or an infinite vertex label
    std::vector<int> poison_edges;      // h <= 1, all three labels finite
    std::vector<int> equality_edges;    // h = 1, all three labels finite
};

CriteriaProfile compute_criteria_profile(const ExtendedPresentationGraph& g, int vertex_limit = 14);

}  // namespace shephard
