#pragma once

#include "shephard/triangle_group.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace shephard {

using Index = std::int32_t;

// P: a-orbit (p-gon), R: c-orbit (r-gon), Q: (a,c)-alternating 2q-gon.
// Bigons for p = 2 or r = 2 are kept as two-edge faces.
enum class FaceType { P = 0, R = 1, Q = 2 };
const char* to_string(FaceType t);

struct Face {
    FaceType type;
    std::vector<Index> vertices;  // boundary read along the positive letter order
};

// Directed Cayley edge v -> v*a (kind 0) or v -> v*c (kind 1).
struct EdgeRef {
    Index tail;
    int kind;
    friend bool operator==(const EdgeRef& x, const EdgeRef& y) { return x.tail == y.tail && x.kind == y.kind; }
};

struct Loop {
    Index start = 0;
    std::vector<int> letters;  // Letter values
};

struct FillResult {
    bool certified = false;
    std::map<int, long long> coefficients;  // face id -> coefficient (non-zero only)
    long long n_p = 0, n_r = 0, n_q = 0;    // per-type sums; n_q is the central exponent
};

// Hash-consed, lazily expanded Cayley graph of a triangle group with typed
// faces and a shortlex BFS section tree from the identity.
class CayleyStore {
public:
    explicit CayleyStore(const TriangleGroup& group, std::size_t budget = 1000000);

    const TriangleGroup& group() const { return *group_; }
    std::size_t size() const { return elements_.size(); }
    std::size_t budget() const { return budget_; }
    void set_budget(std::size_t b) { budget_ = b; }

    Index identity() const { return 0; }
    const RingMatrix& element(Index v) const { return elements_[static_cast<size_t>(v)]; }
    std::optional<Index> find(const RingMatrix& m) const;
    Index intern(const RingMatrix& m);
    Index neighbor(Index v, int letter);
    Index walk(Index v, const std::vector<int>& letters);

    int face_of(Index v, FaceType t);  // Q: the face anchored at v (v, va, vac, ...)
    const Face& face(int id) const { return faces_[static_cast<size_t>(id)]; }
    std::size_t face_count() const { return faces_.size(); }
    std::pair<int, int> edge_faces(EdgeRef e);
    std::vector<EdgeRef> face_edges(int id);

    // section tree
    int depth(Index v);  // grows the BFS until v is reached
    int known_depth(Index v) const {
        return static_cast<size_t>(v) < depth_.size() ? depth_[static_cast<size_t>(v)] : -1;
    }
    void grow_section_to(int radius);
    int section_radius() const { return section_radius_; }
    std::vector<int> section_letters(Index v);
    const std::vector<Index>& section_order() const { return order_; }
    bool is_tree_edge(Index v, int letter);

    // Certified filling of a closed loop: solves the edge equations on tube
    // patches of growing radius until the propagated 2-chain checks exactly.
    FillResult fill(const Loop& loop);
    // one attempt on an explicit vertex set
    FillResult fill_on(const std::vector<Index>& patch, const Loop& loop);
    std::vector<Index> tube(const std::vector<Index>& seeds, int radius);

private:
    void ensure_arrays();
    bool grow_section_level();

    const TriangleGroup* group_;
    std::size_t budget_;
    std::vector<RingMatrix> elements_;
    std::unordered_map<RingMatrix, Index, RingMatrixHash> index_;
    std::vector<std::array<Index, 4>> nbr_;
    std::vector<std::array<int, 3>> face_idx_;
    std::vector<Face> faces_;

    std::vector<int> depth_;
    std::vector<Index> parent_;
    std::vector<int> parent_letter_;
    std::vector<Index> order_;
    std::size_t frontier_begin_ = 0;
    int section_radius_ = 0;

    std::vector<std::uint32_t> stamp_;
    std::uint32_t stamp_gen_ = 0;
};

// Materialised ball of the tiling: section ball of given radius with its edges
// and every face meeting it; faces are complete when all vertices lie inside.
struct TilingBall {
    std::shared_ptr<CayleyStore> store;
    int radius = 0;
    std::vector<Index> vertices;
    std::vector<EdgeRef> edges;
    std::vector<int> faces;
    std::vector<bool> complete;  // parallel to faces

    // V - E + F over the complex of complete faces
    long long euler_characteristic_complete() const;
    // checks every interior vertex sees faces {P, Q, R, Q} in cyclic order;
    // returns the number of interior vertices checked, or -1 on violation
    long long check_vertex_figures() const;
};

TilingBall build_tiling_ball(const TriangleGroup& g, int radius, std::size_t budget = 1000000);

// winding coefficients on the ball itself (no regrowth)
FillResult face_winding(TilingBall& ball, const Loop& loop);

}  // namespace shephard
