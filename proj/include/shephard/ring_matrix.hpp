#pragma once

#include "shephard/cyclotomic.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace shephard {

// 3x3 matrix over Z[gamma], gamma = 2cos(pi/L), stored in the cosine basis
// 1, 2cos(pi/L), ..., 2cos((d-1) pi/L).  set() takes power-basis coefficients.
// Coefficients are int64 with checked 128-bit accumulation; anything that would not fit raises BudgetExceeded,
// since entries only grow that large far outside any practical ball.
class RingMatrix {
public:
    RingMatrix() = default;
    explicit RingMatrix(const CyclotomicField* field);
    static RingMatrix identity(const CyclotomicField* field);

    const CyclotomicField* field() const { return field_; }
    int degree() const { return deg_; }

    std::int64_t* entry(int i, int j) { return &data_[static_cast<size_t>((3 * i + j) * deg_)]; }
    const std::int64_t* entry(int i, int j) const {
        return &data_[static_cast<size_t>((3 * i + j) * deg_)];
    }
    void set(int i, int j, const std::vector<Integer>& coeffs);
    void set(int i, int j, std::int64_t value);

    CyclotomicReal value(int i, int j) const;
    long double numeric(int i, int j) const;

    const std::vector<std::int64_t>& key() const { return data_; }
    std::size_t hash() const;
    bool is_identity() const;
    std::int64_t max_abs_coefficient() const;

    friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b);
    friend bool operator==(const RingMatrix& a, const RingMatrix& b) { return a.data_ == b.data_; }
    friend bool operator!=(const RingMatrix& a, const RingMatrix& b) { return !(a == b); }
    friend bool operator<(const RingMatrix& a, const RingMatrix& b) { return a.data_ < b.data_; }

    RingMatrix transpose() const;
    std::string to_string() const;

private:
    const CyclotomicField* field_ = nullptr;
    int deg_ = 0;
    std::vector<std::int64_t> data_;
};

struct RingMatrixHash {
    std::size_t operator()(const RingMatrix& m) const { return m.hash(); }
};

}  // namespace shephard
