#include "shephard/tiling.hpp"

#include "shephard/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace shephard {

const char* to_string(FaceType t) {
    switch (t) {
        case FaceType::P: return "P";
        case FaceType::R: return "R";
        case FaceType::Q: return "Q2";
    }
    return "?";
}

CayleyStore::CayleyStore(const TriangleGroup& group, std::size_t budget)
    : group_(&group), budget_(budget) {
    intern(RingMatrix::identity(group.field.get()));
    ensure_arrays();
    depth_[0] = 0;
    parent_[0] = -1;
    order_.push_back(0);
}

std::optional<Index> CayleyStore::find(const RingMatrix& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Index CayleyStore::intern(const RingMatrix& m) {
    auto it = index_.find(m);
    if (it != index_.end()) return it->second;
    if (elements_.size() >= budget_)
        throw BudgetExceeded("element budget of " + std::to_string(budget_) + " exhausted");
    Index id = static_cast<Index>(elements_.size());
    elements_.push_back(m);
    index_.emplace(m, id);
    nbr_.push_back({-1, -1, -1, -1});
    face_idx_.push_back({-1, -1, -1});
    return id;
}

void CayleyStore::ensure_arrays() {
    if (depth_.size() < elements_.size()) {
        depth_.resize(elements_.size(), -1);
        parent_.resize(elements_.size(), -1);
        parent_letter_.resize(elements_.size(), -1);
    }
    if (stamp_.size() < elements_.size()) stamp_.resize(elements_.size(), 0);
}

Index CayleyStore::neighbor(Index v, int letter) {
    Index n = nbr_[static_cast<size_t>(v)][static_cast<size_t>(letter)];
    if (n >= 0) return n;
    RingMatrix m = elements_[static_cast<size_t>(v)] * group_->gen[static_cast<size_t>(letter)];
    n = intern(m);
    nbr_[static_cast<size_t>(v)][static_cast<size_t>(letter)] = n;
    nbr_[static_cast<size_t>(n)][static_cast<size_t>(inverse_letter(letter))] = v;
    return n;
}

Index CayleyStore::walk(Index v, const std::vector<int>& letters) {
    for (int x : letters) v = neighbor(v, x);
    return v;
}

int CayleyStore::face_of(Index v, FaceType t) {
    int slot = static_cast<int>(t);
    int& cached = face_idx_[static_cast<size_t>(v)][static_cast<size_t>(slot)];
    if (cached >= 0) return cached;
    Face f{t, {}};
    std::vector<Index> anchors;
    if (t == FaceType::P || t == FaceType::R) {
        int letter = t == FaceType::P ? kA : kC;
        Index u = v;
        do {
            f.vertices.push_back(u);
            anchors.push_back(u);
            u = neighbor(u, letter);
            if (f.vertices.size() > 100000) throw ArithmeticError("face orbit did not close");
        } while (u != v);
    } else {
        Index u = v;
        do {
            anchors.push_back(u);
            f.vertices.push_back(u);
            Index w = neighbor(u, kA);
            f.vertices.push_back(w);
            u = neighbor(w, kC);
            if (f.vertices.size() > 200000) throw ArithmeticError("face orbit did not close");
        } while (u != v);
    }
    int id = static_cast<int>(faces_.size());
    faces_.push_back(std::move(f));
    for (Index a : anchors) face_idx_[static_cast<size_t>(a)][static_cast<size_t>(slot)] = id;
    return id;
}

std::pair<int, int> CayleyStore::edge_faces(EdgeRef e) {
    if (e.kind == 0) return {face_of(e.tail, FaceType::P), face_of(e.tail, FaceType::Q)};
    return {face_of(e.tail, FaceType::R), face_of(neighbor(e.tail, kAInv), FaceType::Q)};
}

std::vector<EdgeRef> CayleyStore::face_edges(int id) {
    const Face f = faces_[static_cast<size_t>(id)];
    std::vector<EdgeRef> out;
    if (f.type == FaceType::P || f.type == FaceType::R) {
        for (Index v : f.vertices) out.push_back({v, f.type == FaceType::P ? 0 : 1});
    } else {
        for (size_t k = 0; k < f.vertices.size(); ++k) out.push_back({f.vertices[k], static_cast<int>(k % 2)});
    }
    return out;
}

bool CayleyStore::grow_section_level() {
    ensure_arrays();
    std::size_t end = order_.size();
    if (frontier_begin_ >= end) return false;
    for (std::size_t i = frontier_begin_; i < end; ++i) {
        Index v = order_[i];
        for (int x = 0; x < 4; ++x) {
            Index u = neighbor(v, x);
            ensure_arrays();
            if (depth_[static_cast<size_t>(u)] >= 0) continue;
            depth_[static_cast<size_t>(u)] = depth_[static_cast<size_t>(v)] + 1;
            parent_[static_cast<size_t>(u)] = v;
            parent_letter_[static_cast<size_t>(u)] = x;
            order_.push_back(u);
        }
    }
    frontier_begin_ = end;
    ++section_radius_;
    return true;
}

void CayleyStore::grow_section_to(int radius) {
    while (section_radius_ < radius)
        if (!grow_section_level()) {
            section_radius_ = std::max(section_radius_, radius);  // finite group: closure reached
            return;
        }
}

int CayleyStore::depth(Index v) {
    ensure_arrays();
    while (depth_[static_cast<size_t>(v)] < 0) {
        if (!grow_section_level()) throw ArithmeticError("element not reachable from identity");
        ensure_arrays();
    }
    return depth_[static_cast<size_t>(v)];
}

std::vector<int> CayleyStore::section_letters(Index v) {
    depth(v);
    std::vector<int> w;
    while (v != 0) {
        w.push_back(parent_letter_[static_cast<size_t>(v)]);
        v = parent_[static_cast<size_t>(v)];
    }
    std::reverse(w.begin(), w.end());
    return w;
}

bool CayleyStore::is_tree_edge(Index v, int letter) {
    Index u = neighbor(v, letter);
    ensure_arrays();
    return (parent_[static_cast<size_t>(u)] == v && parent_letter_[static_cast<size_t>(u)] == letter) ||
           (parent_[static_cast<size_t>(v)] == u && parent_letter_[static_cast<size_t>(v)] == inverse_letter(letter));
}

std::vector<Index> CayleyStore::tube(const std::vector<Index>& seeds, int radius) {
    ensure_arrays();
    ++stamp_gen_;
    std::vector<Index> out;
    std::vector<Index> frontier;
    for (Index s : seeds) {
        ensure_arrays();
        if (stamp_[static_cast<size_t>(s)] == stamp_gen_) continue;
        stamp_[static_cast<size_t>(s)] = stamp_gen_;
        out.push_back(s);
        frontier.push_back(s);
    }
    for (int d = 0; d < radius; ++d) {
        std::vector<Index> next;
        for (Index v : frontier)
            for (int x = 0; x < 4; ++x) {
                Index u = neighbor(v, x);
                ensure_arrays();
                if (stamp_[static_cast<size_t>(u)] == stamp_gen_) continue;
                stamp_[static_cast<size_t>(u)] = stamp_gen_;
                out.push_back(u);
                next.push_back(u);
            }
        frontier.swap(next);
    }
    return out;
}

FillResult CayleyStore::fill_on(const std::vector<Index>& patch, const Loop& loop) {
    FillResult res;
    ensure_arrays();
    ++stamp_gen_;
    const std::uint32_t mark = stamp_gen_;
    for (Index v : patch) stamp_[static_cast<size_t>(v)] = mark;
    auto inside = [&](Index v) {
        return static_cast<size_t>(v) < stamp_.size() && stamp_[static_cast<size_t>(v)] == mark;
    };

    // net traversal count per directed edge
    std::unordered_map<std::int64_t, long long> net;
    auto ekey = [](EdgeRef e) { return static_cast<std::int64_t>(e.tail) * 2 + e.kind; };
    Index v = loop.start;
    if (!inside(v)) return res;
    for (int x : loop.letters) {
        Index u = neighbor(v, x);
        switch (x) {
            case kA: net[ekey({v, 0})] += 1; break;
            case kAInv: net[ekey({u, 0})] -= 1; break;
            case kC: net[ekey({v, 1})] += 1; break;
            case kCInv: net[ekey({u, 1})] -= 1; break;
        }
        v = u;
        if (!inside(v)) return res;
    }
    if (v != loop.start) throw ArithmeticError("loop is not closed in the triangle group");

    std::unordered_map<int, bool> complete;
    auto is_complete = [&](int f) {
        auto it = complete.find(f);
        if (it != complete.end()) return it->second;
        bool ok = true;
        for (Index w : faces_[static_cast<size_t>(f)].vertices)
            if (!inside(w)) {
                ok = false;
                break;
            }
        complete.emplace(f, ok);
        return ok;
    };

    struct E {
        std::int64_t key;
        int f1, f2;
    };
    std::vector<E> edges;
    std::unordered_map<int, std::vector<int>> incident;  // complete face -> edge slots
    for (Index w : patch)
        for (int kind = 0; kind < 2; ++kind) {
            Index u = neighbor(w, kind == 0 ? kA : kC);
            if (!inside(u)) continue;
            auto [f1, f2] = edge_faces({w, kind});
            ensure_arrays();
            edges.push_back({ekey({w, kind}), f1, f2});
        }
    for (size_t i = 0; i < edges.size(); ++i) {
        if (is_complete(edges[i].f1)) incident[edges[i].f1].push_back(static_cast<int>(i));
        if (is_complete(edges[i].f2) && edges[i].f2 != edges[i].f1)
            incident[edges[i].f2].push_back(static_cast<int>(i));
    }

    std::unordered_map<int, long long> val;
    std::deque<int> queue;
    auto netof = [&](std::int64_t k) {
        auto it = net.find(k);
        return it == net.end() ? 0LL : it->second;
    };
    for (const E& e : edges) {
        bool c1 = is_complete(e.f1), c2 = is_complete(e.f2);
        if (c1 == c2) continue;
        int f = c1 ? e.f1 : e.f2;
        if (val.count(f)) continue;
        val[f] = netof(e.key);
        queue.push_back(f);
    }
    while (!queue.empty()) {
        int f = queue.front();
        queue.pop_front();
        for (int slot : incident[f]) {
            const E& e = edges[static_cast<size_t>(slot)];
            int g = e.f1 == f ? e.f2 : e.f1;
            if (!is_complete(g) || val.count(g)) continue;
            val[g] = netof(e.key) - val[f];
            queue.push_back(g);
        }
    }
    for (auto& [f, list] : incident)
        if (!val.count(f)) {
            if (group_->kind == GeometryKind::spherical)
                throw Inapplicable("fillings are not unique in a finite triangle group");
            return res;  // unseeded component: patch too small
        }
    // every edge equation, and loop edges must all be patch edges
    std::size_t seen_loop_edges = 0;
    for (const E& e : edges) {
        long long lhs = 0;
        if (is_complete(e.f1)) lhs += val[e.f1];
        if (is_complete(e.f2)) lhs += val[e.f2];
        long long n = netof(e.key);
        if (n != 0) ++seen_loop_edges;
        if (lhs != n) return res;
    }
    std::size_t loop_edges = 0;
    for (auto& [k, n] : net)
        if (n != 0) ++loop_edges;
    if (seen_loop_edges != loop_edges) return res;

    res.certified = true;
    for (auto& [f, x] : val) {
        if (x == 0) continue;
        res.coefficients[f] = x;
        switch (faces_[static_cast<size_t>(f)].type) {
            case FaceType::P: res.n_p += x; break;
            case FaceType::R: res.n_r += x; break;
            case FaceType::Q: res.n_q += x; break;
        }
    }
    return res;
}

FillResult CayleyStore::fill(const Loop& loop) {
    std::vector<Index> path{loop.start};
    Index v = loop.start;
    for (int x : loop.letters) {
        v = neighbor(v, x);
        path.push_back(v);
    }
    if (v != loop.start) throw ArithmeticError("loop is not closed in the triangle group");
    int maxface = std::max({group_->p, group_->r, 2 * group_->q});
    for (int radius = 1;; radius *= 2) {
        std::vector<Index> patch = tube(path, radius);
        FillResult r = fill_on(patch, loop);
        if (r.certified) {
            const long long na_expected = group_->p * r.n_p + group_->q * r.n_q;
            const long long nc_expected = group_->r * r.n_r + group_->q * r.n_q;
            long long na = 0, nc = 0;
            for (int x : loop.letters) {
                if (x == kA) ++na;
                if (x == kAInv) --na;
                if (x == kC) ++nc;
                if (x == kCInv) --nc;
            }
            if (na != na_expected || nc != nc_expected)
                throw ArithmeticError("filling violates the abelianised boundary identity");
            return r;
        }
        if (radius > static_cast<int>(loop.letters.size()) + 4 * maxface + 64)
            throw BudgetExceeded("loop filling did not certify within the tube radius limit");
    }
}

// ---------------------------------------------------------------- balls

TilingBall build_tiling_ball(const TriangleGroup& g, int radius, std::size_t budget) {
    if (radius < 1) throw InputError("radius must be >= 1");
    TilingBall b;
    b.store = std::make_shared<CayleyStore>(g, budget);
    CayleyStore& s = *b.store;
    const bool closure = g.kind == GeometryKind::spherical;
    if (closure) {
        s.grow_section_to(1 << 20);
    } else {
        s.grow_section_to(radius);
    }
    b.radius = closure ? s.section_radius() : radius;
    for (Index v : s.section_order())
        if (closure || s.known_depth(v) <= radius) b.vertices.push_back(v);
    std::unordered_set<Index> in(b.vertices.begin(), b.vertices.end());
    std::set<int> faces;
    for (Index v : b.vertices) {
        for (int kind = 0; kind < 2; ++kind) {
            Index u = s.neighbor(v, kind == 0 ? kA : kC);
            if (in.count(u)) b.edges.push_back({v, kind});
        }
        faces.insert(s.face_of(v, FaceType::P));
        faces.insert(s.face_of(v, FaceType::R));
        faces.insert(s.face_of(v, FaceType::Q));
        faces.insert(s.face_of(s.neighbor(v, kAInv), FaceType::Q));
    }
    for (int f : faces) {
        b.faces.push_back(f);
        bool ok = true;
        for (Index w : s.face(f).vertices)
            if (!in.count(w)) ok = false;
        b.complete.push_back(ok);
    }
    return b;
}

long long TilingBall::euler_characteristic_complete() const {
    std::set<Index> V;
    std::set<std::pair<Index, int>> E;
    long long F = 0;
    for (size_t i = 0; i < faces.size(); ++i) {
        if (!complete[i]) continue;
        ++F;
        for (const EdgeRef& e : store->face_edges(faces[i])) {
            E.insert({e.tail, e.kind});
            V.insert(e.tail);
            V.insert(store->neighbor(e.tail, e.kind == 0 ? kA : kC));
        }
    }
    return static_cast<long long>(V.size()) - static_cast<long long>(E.size()) + F;
}

long long TilingBall::check_vertex_figures() const {
    CayleyStore& s = *store;
    std::unordered_map<int, bool> comp;
    for (size_t i = 0; i < faces.size(); ++i) comp[faces[i]] = complete[i];
    std::unordered_map<Index, std::vector<int>> around;
    for (size_t i = 0; i < faces.size(); ++i) {
        if (!complete[i]) continue;
        std::set<Index> verts(s.face(faces[i]).vertices.begin(), s.face(faces[i]).vertices.end());
        for (Index v : verts) around[v].push_back(faces[i]);
    }
    long long checked = 0;
    for (Index v : vertices) {
        int fp = s.face_of(v, FaceType::P), fr = s.face_of(v, FaceType::R);
        int fq1 = s.face_of(v, FaceType::Q), fq2 = s.face_of(s.neighbor(v, kAInv), FaceType::Q);
        bool interior = true;
        for (int f : {fp, fr, fq1, fq2})
            if (!comp.count(f) || !comp[f]) interior = false;
        if (!interior) continue;
        ++checked;
        std::vector<int> got = around[v];
        std::sort(got.begin(), got.end());
        std::vector<int> want{fp, fr, fq1, fq2};
        std::sort(want.begin(), want.end());
        if (got != want || std::adjacent_find(want.begin(), want.end()) != want.end()) return -1;
        // cyclic order: out-a | Q | in-c | R | out-c | Q' | in-a | P
        auto has = [&](EdgeRef e, int f) {
            auto pr = s.edge_faces(e);
            return pr.first == f || pr.second == f;
        };
        EdgeRef out_a{v, 0}, in_c{s.neighbor(v, kCInv), 1}, out_c{v, 1}, in_a{s.neighbor(v, kAInv), 0};
        if (!(has(out_a, fq1) && has(in_c, fq1) && has(in_c, fr) && has(out_c, fr) && has(out_c, fq2) &&
              has(in_a, fq2) && has(in_a, fp) && has(out_a, fp)))
            return -1;
    }
    return checked;
}

FillResult face_winding(TilingBall& ball, const Loop& loop) {
    return ball.store->fill_on(ball.vertices, loop);
}

}  // namespace shephard
