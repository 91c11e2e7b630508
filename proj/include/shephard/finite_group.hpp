#pragma once

#include "shephard/cyclotomic.hpp"
#include "shephard/words.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace shephard {

// x + iy with x, y in a real cyclotomic field
struct Complex {
    CyclotomicReal re, im;
    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

using Mat2 = std::array<Complex, 4>;  // row-major

// Finite Sh(p,q,r) (h > 1) as a group of 2x2 complex reflections:
//   s = [[z_p, 1], [0, 1]],  t = [[1, 0], [y, z_r]]
// with y chosen so that st has eigenvalues -e^{i theta} e^{+-2 pi i / q},
// theta = pi (1/p + 1/r); this forces the length-q braid relation (and for
// p = r = 2 reduces to the usual rotation by 2 pi / q).  q = 2 uses diagonal
// generators instead, since the normalized roots above are never orthogonal.
class FiniteShephardGroup {
public:
    FiniteShephardGroup(int p, int q, int r, std::size_t budget = 500000);

    std::size_t order() const { return elements_.size(); }
    int identity() const { return 0; }
    // gen: 0 = s, 1 = s^-1, 2 = t, 3 = t^-1
    int mul_gen(int element, int gen) const { return table_[static_cast<size_t>(element)][static_cast<size_t>(gen)]; }
    int evaluate(const SyllableWord& w) const;
    int element_order(int element) const;
    SyllableWord witness(int element) const;  // BFS word

    // direct matrix evaluation, independent of the multiplication table
    Mat2 matrix_of(const SyllableWord& w) const;
    bool matrix_is_identity(const Mat2& m) const;
    bool relators_hold() const;

    const Mat2& generator(int g) const { return gens_[static_cast<size_t>(g)]; }

private:
    std::string key(const Mat2& m) const;
    int p_, q_, r_;
    FieldPtr field_;
    std::array<Mat2, 2> gens_;
    std::vector<Mat2> elements_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::array<int, 4>> table_;
    std::vector<int> parent_, parent_gen_;
};

Mat2 mat_mul(const Mat2& a, const Mat2& b);

// Coset enumeration (HLT with coincidence processing).  Letters are encoded as
// 2g for generator g and 2g+1 for its inverse.  Returns the index of the
// subgroup generated by `subgroup`, or throws BudgetExceeded.
std::size_t todd_coxeter_index(int generators, const std::vector<std::vector<int>>& relators,
                               const std::vector<std::vector<int>>& subgroup, std::size_t max_cosets = 2000000);

// Sh(p,q,r) relators in the above encoding (s = generator 0, t = generator 1)
std::vector<std::vector<int>> shephard_relators(int p, int q, int r);

}  // namespace shephard
