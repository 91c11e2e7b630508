#pragma once

#include "shephard/dihedral.hpp"
#include "shephard/graph.hpp"

#include <atomic>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace shephard {

// A vertex of a rank-2 coset graph: the coset rep<x> with x = s (type 0) or
// t (type 1).  rep is the member with the least canonical matrix encoding
// (least closure index in the finite regime); z is its central exponent and
// is absent from coset-geometry vertices.
struct CosetVertex {
    int type = 0;
    Index delta = 0;  // store index (or closure index when finite)
    long long z = 0;
    std::string word;   // section word of rep (triangle-group letters, or s/t when finite)
    std::string label;  // type, word and z
    int distance = 0;   // from the base edge {<s>, <t>}
};

struct CosetGraphBall {
    int p = 0, q = 0, r = 0;
    bool central = false;  // Theta-hat (true) or coset geometry D (false)
    bool finite_group = false;
    int radius = 0;
    bool complete = false;  // no vertex beyond the radius exists (finite regime)
    bool interrupted = false;
    bool budget_limited = false;  // radius was cut back to the last layer that fit the budget
    std::vector<CosetVertex> vertices;
    std::vector<std::pair<int, int>> edges;  // type-0 vertex first
    std::vector<std::vector<int>> adjacency;
    std::vector<std::vector<int>> faces;      // coset geometry only: boundary cycles met by the ball
    std::vector<bool> face_complete;
    Rational edge_length_over_pi;             // 1/q: edge length pi/q

    bool interior(int v) const { return complete || vertices[static_cast<size_t>(v)].distance < radius; }
    bool is_bipartite() const;
    // interior vertices have valence p (type 0) or r (type 1); returns the number checked, -1 on violation
    long long check_interior_valences() const;
    std::optional<int> find(int type, Index delta, long long z = 0) const;
};

// balls by breadth-first search from the base pair; throws BudgetExceeded unless
// shrink_on_budget, in which case the ball is cut back to the last complete layer
CosetGraphBall build_theta_hat_ball(int p, int q, int r, int radius, std::size_t budget = 2000000,
                                    const std::atomic<bool>* interrupt = nullptr, bool shrink_on_budget = false);
CosetGraphBall build_coset_geometry_ball(int p, int q, int r, int radius, std::size_t budget = 2000000);

// ---------------------------------------------------------------- girth

struct GirthResult {
    std::optional<int> girth;  // none: no cycle (of length <= cap) inside the ball
    std::vector<int> cycle;    // vertex ids of one shortest cycle
};

// standard BFS girth over all roots; with a cap, only cycles of length <= cap are
// detected (the search depth is bounded accordingly)
GirthResult girth_within_ball(const std::vector<std::vector<int>>& adjacency, std::optional<int> cap = std::nullopt);
GirthResult girth_within_ball(const CosetGraphBall& ball, std::optional<int> cap = std::nullopt);

// forgetting z maps Theta-hat onto D; checks it is a graph morphism, locally
// injective at interior vertices
struct QuotientCheck {
    bool morphism = false;
    bool locally_injective = false;
    std::size_t vertices_mapped = 0;
};
QuotientCheck check_center_quotient(const CosetGraphBall& theta_hat, const CosetGraphBall& coset_geometry);

// ---------------------------------------------------------------- fundamental domain

struct DomainCell {
    VertexSet lower, upper;  // the cell F_lower ∩ F*_upper, lower ⊆ upper
    int dimension = 0;
    std::string local_group;  // Sh_lower
    // 2-cells of an edge block: angles at v_lower, v_(lower+i), v_upper, v_(lower+j), as multiples of pi
    std::vector<Rational> moussong_angles;
    std::vector<Rational> cubical_angles;
};

struct FundamentalDomainData {
    std::vector<VertexSet> spherical;            // the poset S^f, empty set first
    std::vector<DomainCell> cells;               // one per pair lower ⊆ upper
    std::vector<std::vector<int>> simplices;     // chains of the derived complex (indices into spherical)
    std::vector<std::pair<VertexSet, std::vector<std::pair<std::pair<int, int>, Rational>>>>
        link_simplices;  // Delta_Lambda edge lengths pi/m_ij, as multiples of pi
    long long euler_characteristic() const;
    int dimension() const;
};

// throws Inapplicable when a vertex label is infinite
FundamentalDomainData build_fundamental_domain(const ExtendedPresentationGraph& g);

// ---------------------------------------------------------------- certificate

enum class CertificateVerdict { certified_at_radius, refuted, inapplicable };
std::string to_string(CertificateVerdict v);

struct EdgeCertificate {
    int edge = 0;
    int p = 0, m = 0, r = 0;
    bool finite_group = false;
    int required_girth = 0;            // 2m
    int radius = 0;                    // ball radius actually used
    std::optional<int> shortest_cycle;  // within the ball (cap 2m in the infinite case)
    std::vector<std::string> cycle_witness;  // coset labels of a short cycle
    bool satisfied = false;
    bool interrupted = false;
    std::string note;
};

struct RadiusPolicy {
    std::optional<int> fixed;  // default: 2m + 4 per edge
    std::size_t budget = 2000000;
    int radius_for(int m) const { return fixed ? *fixed : 2 * m + 4; }
};

struct Cat0Certificate {
    bool two_dimensional = false;
    CertificateVerdict verdict = CertificateVerdict::inapplicable;
    std::vector<EdgeCertificate> edges;
    std::vector<std::string> assumptions;
    Decision hyperbolic_type = Decision::undecided;
    std::string hyperbolicity_annotation;
    bool interrupted = false;
};

Cat0Certificate cat0_report(const ExtendedPresentationGraph& g, const RadiusPolicy& policy = {},
                            const std::atomic<bool>* interrupt = nullptr);

}  // namespace shephard
