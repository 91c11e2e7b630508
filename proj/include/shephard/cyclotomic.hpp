#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace shephard {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Q(gamma) with gamma = 2cos(pi/L); conductor 2L.  Instances are interned per L.
class CyclotomicField {
public:
    static std::shared_ptr<const CyclotomicField> get(int L);

    int L() const { return L_; }
    int conductor() const { return 2 * L_; }
    int degree() const { return static_cast<int>(minpoly_.size()) - 1; }

    // monic minimal polynomial of gamma, coefficients low -> high
    const std::vector<Integer>& minpoly() const { return minpoly_; }
    const std::vector<std::int64_t>& minpoly_i64() const { return minpoly64_; }

    // 2cos(pi*j/L) = C_j(gamma) as reduced integer coefficients
    std::vector<Integer> two_cos(long long j) const;

    long double gamma_numeric() const;

private:
    explicit CyclotomicField(int L);
    int L_;
    std::vector<Integer> minpoly_;
    std::vector<std::int64_t> minpoly64_;
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

// integer polynomial helpers (low -> high)
std::vector<Integer> cyclotomic_polynomial(int n);
void reduce_mod_monic(std::vector<Integer>& poly, const std::vector<Integer>& monic);

class CyclotomicReal {
public:
    CyclotomicReal();  // zero of Q
    CyclotomicReal(FieldPtr field, const Rational& value);
    CyclotomicReal(FieldPtr field, std::vector<Rational> coeffs);

    static CyclotomicReal gamma(FieldPtr field);
    // 2cos(pi*num/den), placed in the field of conductor 2*den
    static CyclotomicReal two_cos(long long num, int den);
    // 2cos(pi*j/L) inside a given field
    static CyclotomicReal two_cos_in(FieldPtr field, long long j);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    CyclotomicReal promote(const FieldPtr& target) const;

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;  // throws unless rational

    CyclotomicReal operator-() const;
    CyclotomicReal& operator+=(const CyclotomicReal& o);
    CyclotomicReal& operator-=(const CyclotomicReal& o);
    CyclotomicReal& operator*=(const CyclotomicReal& o);
    CyclotomicReal& operator/=(const CyclotomicReal& o);
    CyclotomicReal inverse() const;

    friend CyclotomicReal operator+(CyclotomicReal a, const CyclotomicReal& b) { return a += b; }
    friend CyclotomicReal operator-(CyclotomicReal a, const CyclotomicReal& b) { return a -= b; }
    friend CyclotomicReal operator*(CyclotomicReal a, const CyclotomicReal& b) { return a *= b; }
    friend CyclotomicReal operator/(CyclotomicReal a, const CyclotomicReal& b) { return a /= b; }
    friend bool operator==(const CyclotomicReal& a, const CyclotomicReal& b);
    friend bool operator!=(const CyclotomicReal& a, const CyclotomicReal& b) { return !(a == b); }

    long double to_long_double() const;
    std::string to_string() const;

private:
    void normalize();
    FieldPtr field_;
    std::vector<Rational> c_;
};

// Exact sign: zero test on the reduced form, then MPFR interval evaluation with
// working precision doubling from 64 bits until the enclosure excludes zero.
int sign_of(const CyclotomicReal& x);

// [lo, hi] enclosure at the given precision (used by tests for the sanity check)
std::pair<long double, long double> enclose(const CyclotomicReal& x, long precision_bits);

// |minpoly(gamma)| evaluated numerically at the given precision
long double minpoly_residual(const CyclotomicField& f, long precision_bits);

}  // namespace shephard
