#include "shephard/integer_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace shephard {

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (long long x : r) a_.emplace_back(x);
    }
}

IntegerMatrix IntegerMatrix::identity(size_t n) {
    IntegerMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntegerMatrix operator*(const IntegerMatrix& x, const IntegerMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("shape mismatch");
    IntegerMatrix r(x.rows_, y.cols_);
    for (size_t i = 0; i < x.rows_; ++i)
        for (size_t k = 0; k < x.cols_; ++k) {
            if (x(i, k) == 0) continue;
            for (size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
        }
    return r;
}

std::vector<Integer> IntegerMatrix::apply(const std::vector<Integer>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("shape mismatch");
    std::vector<Integer> r(rows_, 0);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

Integer IntegerMatrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    const size_t n = rows_;
    if (n == 0) return 1;
    std::vector<Integer> a = a_;
    auto at = [&](size_t i, size_t j) -> Integer& { return a[i * n + j]; };
    Integer prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            size_t p = k + 1;
            while (p < n && at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

std::string IntegerMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

void swap_rows(IntegerMatrix& m, size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntegerMatrix& m, size_t a, size_t b) {
    if (a == b) return;
    for (size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_dst += k * row_src
void add_row(IntegerMatrix& m, size_t dst, size_t src, const Integer& k) {
    for (size_t j = 0; j < m.cols(); ++j) m(dst, j) += k * m(src, j);
}

void add_col(IntegerMatrix& m, size_t dst, size_t src, const Integer& k) {
    for (size_t i = 0; i < m.rows(); ++i) m(i, dst) += k * m(i, src);
}

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& M) {
    const size_t m = M.rows(), n = M.cols();
    SmithForm out{M, IntegerMatrix::identity(m), IntegerMatrix::identity(n), 0};
    IntegerMatrix& A = out.S;
    IntegerMatrix& U = out.U;
    IntegerMatrix& V = out.V;

    for (size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // pivot on least absolute value
            bool found = false;
            size_t pi = t, pj = t;
            Integer best = 0;
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < n; ++j) {
                    if (A(i, j) == 0) continue;
                    Integer v = abs(A(i, j));
                    if (!found || v < best) {
                        found = true;
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) return out;
            swap_rows(A, t, pi);
            swap_rows(U, t, pi);
            swap_cols(A, t, pj);
            swap_cols(V, t, pj);

            bool dirty = false;
            for (size_t i = t + 1; i < m; ++i) {
                if (A(i, t) == 0) continue;
                Integer q = A(i, t) / A(t, t);
                add_row(A, i, t, -q);
                add_row(U, i, t, -q);
                if (A(i, t) != 0) dirty = true;
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (A(t, j) == 0) continue;
                Integer q = A(t, j) / A(t, t);
                add_col(A, j, t, -q);
                add_col(V, j, t, -q);
                if (A(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            // divisibility chain
            bool fixed = true;
            for (size_t i = t + 1; i < m && fixed; ++i)
                for (size_t j = t + 1; j < n; ++j)
                    if (A(i, j) % A(t, t) != 0) {
                        add_row(A, t, i, Integer(1));
                        add_row(U, t, i, Integer(1));
                        fixed = false;
                        break;
                    }
            if (fixed) break;
        }
        if (A(t, t) < 0) {
            for (size_t j = 0; j < n; ++j) A(t, j) = -A(t, j);
            for (size_t j = 0; j < m; ++j) U(t, j) = -U(t, j);
        }
        out.rank = t + 1;
    }
    return out;
}

std::vector<std::vector<Integer>> kernel_basis(const IntegerMatrix& M) {
    SmithForm f = smith_normal_form(M);
    std::vector<std::vector<Integer>> basis;
    // M = U^-1 S V^-1, so ker M = V * ker S; the trailing columns of V span it
    for (size_t j = f.rank; j < M.cols(); ++j) {
        std::vector<Integer> v(M.cols());
        for (size_t i = 0; i < M.cols(); ++i) v[i] = f.V(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace shephard
