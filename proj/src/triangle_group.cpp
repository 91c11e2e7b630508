#include "shephard/triangle_group.hpp"

#include "shephard/errors.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <tuple>

namespace shephard {

GeometryKind geometry_kind(int p, int q, int r) {
    Rational h = Rational(1, p) + Rational(1, q) + Rational(1, r);
    if (h > 1) return GeometryKind::spherical;
    if (h == 1) return GeometryKind::euclidean;
    return GeometryKind::hyperbolic;
}

std::string to_string(GeometryKind k) {
    switch (k) {
        case GeometryKind::spherical: return "spherical";
        case GeometryKind::euclidean: return "euclidean";
        case GeometryKind::hyperbolic: return "hyperbolic";
    }
    return "?";
}

char letter_char(int x) { return "aAcC"[x & 3]; }

std::vector<Integer> two_cos_pi_over(const CyclotomicField& f, int m) {
    std::vector<Integer> out(static_cast<size_t>(f.degree()), 0);
    if (m == 2) return out;
    if (m == 3) {
        out[0] = 1;
        return out;
    }
    if (f.L() % m != 0) throw ArithmeticError("label does not divide the field conductor");
    return f.two_cos(f.L() / m);
}

bool TriangleGroup::preserves_form(const RingMatrix& m) const {
    return m.transpose() * twice_form * m == twice_form;
}

TriangleGroup realize_triangle_group(int p, int q, int r) {
    if (p < 2 || q < 2 || r < 2) throw InputError("triangle group orders must be >= 2");
    TriangleGroup g;
    g.p = p;
    g.q = q;
    g.r = r;
    g.kind = geometry_kind(p, q, r);
    int L = 1;
    for (int m : {p, q, r})
        if (m >= 4) L = std::lcm(L, m);
    g.field = CyclotomicField::get(L);
    const CyclotomicField* f = g.field.get();

    // m_ij on basis (e1, e2, e3)
    int lab[3][3] = {{1, p, q}, {p, 1, r}, {q, r, 1}};
    g.twice_form = RingMatrix(f);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) {
                g.twice_form.set(i, j, 2);
                continue;
            }
            auto c = two_cos_pi_over(*f, lab[i][j]);
            for (auto& x : c) x = -x;
            g.twice_form.set(i, j, c);
        }
    // reflection r_i: e_j -> e_j - 2B(e_i, e_j) e_i ; matrices act on columns
    for (int i = 0; i < 3; ++i) {
        RingMatrix m = RingMatrix::identity(f);
        for (int j = 0; j < 3; ++j) {
            if (j == i) {
                m.set(i, i, -1);
                continue;
            }
            m.set(i, j, two_cos_pi_over(*f, lab[i][j]));
        }
        g.reflection[static_cast<size_t>(i)] = m;
    }
    g.gen[kA] = g.reflection[0] * g.reflection[1];
    g.gen[kAInv] = g.reflection[1] * g.reflection[0];
    g.gen[kC] = g.reflection[1] * g.reflection[2];
    g.gen[kCInv] = g.reflection[2] * g.reflection[1];
    return g;
}

const TriangleGroup& triangle_group(int p, int q, int r) {
    static std::map<std::tuple<int, int, int>, std::unique_ptr<TriangleGroup>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, q, r);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<TriangleGroup>(realize_triangle_group(p, q, r))).first;
    return *it->second;
}

}  // namespace shephard
