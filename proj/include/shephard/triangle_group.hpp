#pragma once

#include "shephard/cyclotomic.hpp"
#include "shephard/ring_matrix.hpp"

#include <array>
#include <string>

namespace shephard {

enum class GeometryKind { spherical, euclidean, hyperbolic };

GeometryKind geometry_kind(int p, int q, int r);
std::string to_string(GeometryKind k);

// Cayley letters; inverse of letter x is x ^ 1.
enum Letter : int { kA = 0, kAInv = 1, kC = 2, kCInv = 3 };
inline int inverse_letter(int x) { return x ^ 1; }
char letter_char(int x);  // a A c C

// 2cos(pi/m) as reduced integer coefficients in the field; m = 2, 3 are rational
std::vector<Integer> two_cos_pi_over(const CyclotomicField& f, int m);

// Rotations a (order p) and c (order r) with ac of order q, realised through
// the rank-3 geometric reflection representation: a = r1 r2, c = r2 r3 with
// m(1,2) = p, m(2,3) = r, m(1,3) = q.  Faithful in every regime.
struct TriangleGroup {
    int p = 0, q = 0, r = 0;
    GeometryKind kind = GeometryKind::hyperbolic;
    FieldPtr field;
    std::array<RingMatrix, 4> gen;         // indexed by Letter
    std::array<RingMatrix, 3> reflection;  // r1, r2, r3
    RingMatrix twice_form;                 // 2B, B(e_i, e_j) = -cos(pi/m_ij)

    int letter_order(int letter) const { return letter < 2 ? p : r; }
    // M^T (2B) M == 2B
    bool preserves_form(const RingMatrix& m) const;
};

TriangleGroup realize_triangle_group(int p, int q, int r);

// shared realisation per triple (the store and sessions hold pointers into it)
const TriangleGroup& triangle_group(int p, int q, int r);

}  // namespace shephard
