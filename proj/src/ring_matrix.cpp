#include "shephard/ring_matrix.hpp"

#include "shephard/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace shephard {

namespace {

// Entries are stored in the basis b_0 = 1, b_j = 2cos(j pi / L) (1 <= j < d).
// Products stay sparse there (b_i b_j = b_{i+j} + b_{|i-j|}) and coefficients
// stay small, unlike the power basis whose reductions blow up for large L.
struct CosBasis {
    int d = 0;
    std::vector<std::vector<Integer>> power;  // b_j in the power basis
    std::vector<std::vector<std::int64_t>> red;  // b_k, k < 2d - 1, in the b basis

    std::vector<Integer> from_power(std::vector<Integer> rem) const {
        rem.resize(static_cast<size_t>(d));
        std::vector<Integer> out(static_cast<size_t>(d));
        for (int k = d; k-- > 0;) {
            Integer c = rem[static_cast<size_t>(k)];
            out[static_cast<size_t>(k)] = c;
            if (c == 0) continue;
            const auto& b = power[static_cast<size_t>(k)];
            for (size_t i = 0; i < b.size(); ++i) rem[i] -= c * b[i];
        }
        return out;
    }
};

std::vector<Integer> integral(const CyclotomicReal& x, int d) {
    std::vector<Integer> out(static_cast<size_t>(d));
    const auto& c = x.coeffs();
    for (size_t i = 0; i < c.size() && i < out.size(); ++i) {
        if (denominator(c[i]) != 1) throw ArithmeticError("non-integral cosine");
        out[i] = numerator(c[i]);
    }
    return out;
}

const CosBasis& cos_basis(const CyclotomicField* f) {
    static std::mutex mu;
    static std::map<long long, std::unique_ptr<CosBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[f->L()];
    if (slot) return *slot;
    auto b = std::make_unique<CosBasis>();
    const int d = f->degree();
    b->d = d;
    auto field = CyclotomicField::get(f->L());
    b->power.push_back(std::vector<Integer>{1});
    for (int j = 1; j < d; ++j) b->power.push_back(integral(CyclotomicReal::two_cos_in(field, j), d));
    for (int k = 0; k < 2 * d - 1; ++k) {
        std::vector<Integer> pc = k == 0 ? std::vector<Integer>{1} : integral(CyclotomicReal::two_cos_in(field, k), d);
        std::vector<std::int64_t> row;
        for (const Integer& v : b->from_power(pc)) {
            if (abs(v) > Integer(INT64_MAX / 4)) throw BudgetExceeded("cosine reduction coefficient too large");
            row.push_back(v.convert_to<std::int64_t>());
        }
        b->red.push_back(row);
    }
    slot = std::move(b);
    return *slot;
}

}  // namespace

RingMatrix::RingMatrix(const CyclotomicField* field)
    : field_(field), deg_(field->degree()), data_(static_cast<size_t>(9 * deg_), 0) {}

RingMatrix RingMatrix::identity(const CyclotomicField* field) {
    RingMatrix m(field);
    for (int i = 0; i < 3; ++i) m.entry(i, i)[0] = 1;
    return m;
}

void RingMatrix::set(int i, int j, const std::vector<Integer>& coeffs) {
    std::int64_t* e = entry(i, j);
    std::vector<Integer> c = cos_basis(field_).from_power(coeffs);
    for (int k = 0; k < deg_; ++k) {
        if (abs(c[static_cast<size_t>(k)]) > Integer(INT64_MAX)) throw BudgetExceeded("entry exceeds 64-bit range");
        e[k] = c[static_cast<size_t>(k)].convert_to<std::int64_t>();
    }
}

void RingMatrix::set(int i, int j, std::int64_t value) {
    std::int64_t* e = entry(i, j);
    for (int k = 0; k < deg_; ++k) e[k] = 0;
    e[0] = value;
}

CyclotomicReal RingMatrix::value(int i, int j) const {
    auto field = CyclotomicField::get(field_->L());
    const std::int64_t* e = entry(i, j);
    CyclotomicReal acc(field, Rational(e[0]));
    for (int k = 1; k < deg_; ++k)
        if (e[k]) acc = acc + CyclotomicReal::two_cos_in(field, k) * CyclotomicReal(field, Rational(e[k]));
    return acc;
}

long double RingMatrix::numeric(int i, int j) const {
    const long double pi = 3.141592653589793238462643383279502884L;
    const std::int64_t* e = entry(i, j);
    long double acc = static_cast<long double>(e[0]);
    for (int k = 1; k < deg_; ++k)
        if (e[k]) acc += static_cast<long double>(e[k]) * 2 * std::cos(pi * k / static_cast<long double>(field_->L()));
    return acc;
}

std::size_t RingMatrix::hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::int64_t x : data_) {
        std::uint64_t z = static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        h ^= z ^ (z >> 31);
    }
    return static_cast<std::size_t>(h);
}

bool RingMatrix::is_identity() const {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const std::int64_t* e = entry(i, j);
            for (int k = 0; k < deg_; ++k)
                if (e[k] != ((i == j && k == 0) ? 1 : 0)) return false;
        }
    return true;
}

std::int64_t RingMatrix::max_abs_coefficient() const {
    std::int64_t m = 0;
    for (std::int64_t x : data_) m = std::max(m, x < 0 ? -x : x);
    return m;
}

RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
    const int d = a.deg_;
    RingMatrix r(a.field_);
    const CosBasis& basis = cos_basis(a.field_);
    thread_local std::vector<__int128> acc;
    acc.assign(static_cast<size_t>(2 * d - 1), 0);
    constexpr __int128 lim = static_cast<__int128>(INT64_MAX);
    auto overflow = [] { throw BudgetExceeded("matrix coefficient exceeds 64-bit range"); };
    auto add = [&](int k, __int128 v) {
        if (__builtin_add_overflow(acc[static_cast<size_t>(k)], v, &acc[static_cast<size_t>(k)])) overflow();
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::fill(acc.begin(), acc.end(), 0);
            for (int t = 0; t < 3; ++t) {
                const std::int64_t* x = a.entry(i, t);
                const std::int64_t* y = b.entry(t, j);
                for (int u = 0; u < d; ++u) {
                    if (!x[u]) continue;
                    for (int v = 0; v < d; ++v) {
                        if (!y[v]) continue;
                        __int128 xy = static_cast<__int128>(x[u]) * y[v];
                        if (u == 0 || v == 0) {
                            add(u + v, xy);
                        } else {
                            add(u + v, xy);
                            if (u == v) add(0, 2 * xy);
                            else add(u > v ? u - v : v - u, xy);
                        }
                    }
                }
            }
            for (int k = 2 * d - 2; k >= d; --k) {
                __int128 c = acc[static_cast<size_t>(k)];
                if (!c) continue;
                const auto& row = basis.red[static_cast<size_t>(k)];
                for (int s = 0; s < d; ++s) {
                    if (!row[static_cast<size_t>(s)]) continue;
                    __int128 prod;
                    if (__builtin_mul_overflow(c, static_cast<__int128>(row[static_cast<size_t>(s)]), &prod)) overflow();
                    add(s, prod);
                }
            }
            std::int64_t* out = r.entry(i, j);
            for (int k = 0; k < d; ++k) {
                if (acc[static_cast<size_t>(k)] > lim || acc[static_cast<size_t>(k)] < -lim) overflow();
                out[k] = static_cast<std::int64_t>(acc[static_cast<size_t>(k)]);
            }
        }
    return r;
}

RingMatrix RingMatrix::transpose() const {
    RingMatrix t(field_);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < deg_; ++k) t.entry(j, i)[k] = entry(i, j)[k];
    return t;
}

std::string RingMatrix::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < 3; ++i) {
        os << (i ? "\n" : "") << "[";
        for (int j = 0; j < 3; ++j) {
            os << (j ? ", " : "") << "(";
            for (int k = 0; k < deg_; ++k) os << (k ? " " : "") << entry(i, j)[k];
            os << ")";
        }
        os << "]";
    }
    return os.str();
}

}  // namespace shephard
