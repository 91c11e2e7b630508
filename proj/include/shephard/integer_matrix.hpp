#pragma once

#include "shephard/cyclotomic.hpp"

#include <string>
#include <vector>

namespace shephard {

class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows);
    static IntegerMatrix identity(size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Integer& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Integer& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    friend IntegerMatrix operator*(const IntegerMatrix& x, const IntegerMatrix& y);
    friend bool operator==(const IntegerMatrix& x, const IntegerMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    std::vector<Integer> apply(const std::vector<Integer>& v) const;
    Integer determinant() const;  // square only, fraction-free elimination
    std::string to_string() const;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> a_;
};

struct SmithForm {
    IntegerMatrix S, U, V;  // U * M * V = S
    size_t rank = 0;
};

SmithForm smith_normal_form(const IntegerMatrix& M);

// primitive basis of {v : M v = 0} over Z
std::vector<std::vector<Integer>> kernel_basis(const IntegerMatrix& M);

}  // namespace shephard
