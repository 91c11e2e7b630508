#include "shephard/cyclotomic.hpp"

#include "shephard/errors.hpp"

#include <mpfr.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace shephard {

namespace {

using IPoly = std::vector<Integer>;
using QPoly = std::vector<Rational>;

void trim(IPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

IPoly mul(const IPoly& a, const IPoly& b) {
    if (a.empty() || b.empty()) return {};
    IPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// exact division by a monic polynomial
IPoly div_exact(IPoly num, const IPoly& den) {
    trim(num);
    const size_t dd = den.size() - 1;
    if (num.size() < den.size()) return {};
    IPoly q(num.size() - dd, 0);
    for (size_t k = num.size(); k-- > dd;) {
        Integer coef = num[k];
        if (coef == 0) continue;
        q[k - dd] = coef;
        for (size_t j = 0; j <= dd; ++j) num[k - dd + j] -= coef * den[j];
    }
    trim(num);
    if (!num.empty()) throw ArithmeticError("cyclotomic division not exact");
    return q;
}

template <class T>
void reduce_generic(std::vector<T>& poly, const IPoly& monic) {
    const size_t d = monic.size() - 1;
    for (size_t k = poly.size(); k-- > d;) {
        T coef = poly[k];
        if (coef == 0) continue;
        for (size_t j = 0; j <= d; ++j) poly[k - d + j] -= coef * T(monic[j]);
    }
    poly.resize(d, T(0));
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// polynomial division with remainder over Q
void qdivmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
    trim(a);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    const Rational lead = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        size_t shift = a.size() - b.size();
        Rational coef = a.back() / lead;
        q[shift] = coef;
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= coef * b[j];
        trim(a);
    }
    r = a;
}

QPoly qsub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

IPoly minimal_polynomial(int L) {
    if (L == 1) return {Integer(2), Integer(1)};  // gamma = -2
    IPoly phi = cyclotomic_polynomial(2 * L);
    const size_t d = (phi.size() - 1) / 2;
    // x^{-d} Phi(x) = c_d + sum_j c_{d+j} (x^j + x^-j), and x^j + x^-j = D_j(x + 1/x)
    std::vector<IPoly> D{{Integer(2)}, {Integer(0), Integer(1)}};
    for (size_t j = 2; j <= d; ++j) {
        IPoly next = mul({Integer(0), Integer(1)}, D[j - 1]);
        for (size_t i = 0; i < D[j - 2].size(); ++i) next[i] -= D[j - 2][i];
        D.push_back(next);
    }
    IPoly m(d + 1, 0);
    m[0] += phi[d];
    for (size_t j = 1; j <= d; ++j)
        for (size_t i = 0; i < D[j].size(); ++i) m[i] += phi[d + j] * D[j][i];
    return m;
}

struct Mpfr {
    mpfr_t v;
    explicit Mpfr(long prec) { mpfr_init2(v, prec); }
    ~Mpfr() { mpfr_clear(v); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
};

struct Interval {
    Mpfr lo, hi;
    explicit Interval(long prec) : lo(prec), hi(prec) {}
};

void set_rational(Interval& I, const Rational& q) {
    mpfr_set_q(I.lo.v, q.backend().data(), MPFR_RNDD);
    mpfr_set_q(I.hi.v, q.backend().data(), MPFR_RNDU);
}

// I = I * J (outward rounding)
void imul(Interval& I, const Interval& J, long prec) {
    Mpfr c[4] = {Mpfr(prec), Mpfr(prec), Mpfr(prec), Mpfr(prec)};
    Mpfr u[4] = {Mpfr(prec), Mpfr(prec), Mpfr(prec), Mpfr(prec)};
    const mpfr_t* a[2] = {&I.lo.v, &I.hi.v};
    const mpfr_t* b[2] = {&J.lo.v, &J.hi.v};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(c[2 * i + j].v, *a[i], *b[j], MPFR_RNDD);
            mpfr_mul(u[2 * i + j].v, *a[i], *b[j], MPFR_RNDU);
        }
    mpfr_set(I.lo.v, c[0].v, MPFR_RNDD);
    mpfr_set(I.hi.v, u[0].v, MPFR_RNDU);
    for (int k = 1; k < 4; ++k) {
        mpfr_min(I.lo.v, I.lo.v, c[k].v, MPFR_RNDD);
        mpfr_max(I.hi.v, I.hi.v, u[k].v, MPFR_RNDU);
    }
}

void iadd(Interval& I, const Interval& J) {
    mpfr_add(I.lo.v, I.lo.v, J.lo.v, MPFR_RNDD);
    mpfr_add(I.hi.v, I.hi.v, J.hi.v, MPFR_RNDU);
}

void gamma_interval(Interval& G, int L, long prec) {
    if (L <= 2) {
        set_rational(G, Rational(L == 1 ? -2 : 0));
        return;
    }
    Mpfr plo(prec), phi(prec);
    mpfr_const_pi(plo.v, MPFR_RNDD);
    mpfr_const_pi(phi.v, MPFR_RNDU);
    mpfr_div_ui(plo.v, plo.v, static_cast<unsigned long>(L), MPFR_RNDD);
    mpfr_div_ui(phi.v, phi.v, static_cast<unsigned long>(L), MPFR_RNDU);
    // cos is decreasing on (0, pi/2]
    mpfr_cos(G.lo.v, phi.v, MPFR_RNDD);
    mpfr_cos(G.hi.v, plo.v, MPFR_RNDU);
    mpfr_mul_2ui(G.lo.v, G.lo.v, 1, MPFR_RNDD);
    mpfr_mul_2ui(G.hi.v, G.hi.v, 1, MPFR_RNDU);
}

void evaluate(Interval& acc, const std::vector<Rational>& c, int L, long prec) {
    Interval g(prec), term(prec);
    gamma_interval(g, L, prec);
    set_rational(acc, c.empty() ? Rational(0) : c.back());
    for (size_t k = c.size(); k-- > 1;) {
        imul(acc, g, prec);
        set_rational(term, c[k - 1]);
        iadd(acc, term);
    }
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(int n) {
    static std::map<int, IPoly> memo;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
    }
    IPoly num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    IPoly den{Integer(1)};
    for (int d = 1; d < n; ++d)
        if (n % d == 0) den = mul(den, cyclotomic_polynomial(d));
    IPoly res = div_exact(num, den);
    std::lock_guard<std::mutex> lock(mu);
    memo[n] = res;
    return res;
}

void reduce_mod_monic(std::vector<Integer>& poly, const std::vector<Integer>& monic) {
    reduce_generic(poly, monic);
}

// ---------------------------------------------------------------- field

CyclotomicField::CyclotomicField(int L) : L_(L), minpoly_(minimal_polynomial(L)) {
    for (const auto& c : minpoly_) minpoly64_.push_back(c.convert_to<std::int64_t>());
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(int L) {
    if (L < 1) throw std::invalid_argument("field parameter must be positive");
    static std::map<int, std::shared_ptr<const CyclotomicField>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(L);
    if (it != cache.end()) return it->second;
    std::shared_ptr<const CyclotomicField> f(new CyclotomicField(L));
    cache.emplace(L, f);
    return f;
}

std::vector<Integer> CyclotomicField::two_cos(long long j) const {
    const long long period = 2LL * L_;
    j = ((j % period) + period) % period;
    if (j > L_) j = period - j;
    const size_t d = static_cast<size_t>(degree());
    IPoly prev{Integer(2)}, cur{Integer(0), Integer(1)};
    if (j == 0) {
        prev.resize(d, 0);
        return prev;
    }
    for (long long k = 1; k < j; ++k) {
        IPoly next = mul({Integer(0), Integer(1)}, cur);
        for (size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
        reduce_generic(next, minpoly_);
        prev = std::move(cur);
        cur = std::move(next);
    }
    reduce_generic(cur, minpoly_);
    cur.resize(d, 0);
    return cur;
}

long double CyclotomicField::gamma_numeric() const {
    if (L_ == 1) return -2.0L;
    return 2.0L * std::cos(3.14159265358979323846264338327950288L / L_);
}

// ---------------------------------------------------------------- elements

CyclotomicReal::CyclotomicReal() : field_(CyclotomicField::get(1)), c_(1, Rational(0)) {}

CyclotomicReal::CyclotomicReal(FieldPtr field, const Rational& value)
    : field_(std::move(field)), c_(static_cast<size_t>(field_->degree()), Rational(0)) {
    c_[0] = value;
}

CyclotomicReal::CyclotomicReal(FieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    normalize();
}

void CyclotomicReal::normalize() {
    if (c_.size() > static_cast<size_t>(field_->degree()))
        reduce_generic(c_, field_->minpoly());
    c_.resize(static_cast<size_t>(field_->degree()), Rational(0));
}

CyclotomicReal CyclotomicReal::gamma(FieldPtr field) {
    std::vector<Rational> c{Rational(0), Rational(1)};
    return CyclotomicReal(std::move(field), c);
}

CyclotomicReal CyclotomicReal::two_cos_in(FieldPtr field, long long j) {
    auto ic = field->two_cos(j);
    std::vector<Rational> c(ic.begin(), ic.end());
    return CyclotomicReal(std::move(field), c);
}

CyclotomicReal CyclotomicReal::two_cos(long long num, int den) {
    return two_cos_in(CyclotomicField::get(den), num);
}

CyclotomicReal CyclotomicReal::promote(const FieldPtr& target) const {
    if (target == field_) return *this;
    if (target->L() % field_->L() != 0)
        throw ArithmeticError("field promotion requires divisibility of conductors");
    // gamma_small = C_{L'/L}(gamma_big)
    CyclotomicReal g = two_cos_in(target, target->L() / field_->L());
    CyclotomicReal acc(target, Rational(0));
    for (size_t k = c_.size(); k-- > 0;) {
        acc *= g;
        acc += CyclotomicReal(target, c_[k]);
    }
    return acc;
}

namespace {
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return a;
    return CyclotomicField::get(std::lcm(a->L(), b->L()));
}
}  // namespace

bool CyclotomicReal::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CyclotomicReal::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational CyclotomicReal::rational_value() const {
    if (!is_rational()) throw ArithmeticError("value is irrational");
    return c_.empty() ? Rational(0) : c_[0];
}

CyclotomicReal CyclotomicReal::operator-() const {
    CyclotomicReal r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CyclotomicReal& CyclotomicReal::operator+=(const CyclotomicReal& o) {
    if (field_ != o.field_) {
        auto f = common_field(field_, o.field_);
        *this = promote(f);
        return *this += o.promote(f);
    }
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CyclotomicReal& CyclotomicReal::operator-=(const CyclotomicReal& o) { return *this += -o; }

CyclotomicReal& CyclotomicReal::operator*=(const CyclotomicReal& o) {
    if (field_ != o.field_) {
        auto f = common_field(field_, o.field_);
        *this = promote(f);
        return *this *= o.promote(f);
    }
    c_ = qmul(c_, o.c_);
    normalize();
    return *this;
}

CyclotomicReal CyclotomicReal::inverse() const {
    if (is_zero()) throw ArithmeticError("division by exact zero");
    // extended Euclid: find u with u*a = 1 mod m
    QPoly m(field_->minpoly().begin(), field_->minpoly().end());
    QPoly a = c_;
    trim(a);
    QPoly r0 = m, r1 = a, s0{}, s1{Rational(1)};
    while (!(r1.size() == 1)) {
        QPoly q, r;
        qdivmod(r0, r1, q, r);
        QPoly s = qsub(s0, qmul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
        if (r1.empty()) throw ArithmeticError("minimal polynomial not irreducible");
    }
    Rational lead = r1[0];
    for (auto& x : s1) x /= lead;
    return CyclotomicReal(field_, s1);
}

CyclotomicReal& CyclotomicReal::operator/=(const CyclotomicReal& o) {
    if (field_ != o.field_) {
        auto f = common_field(field_, o.field_);
        *this = promote(f);
        return *this /= o.promote(f);
    }
    return *this *= o.inverse();
}

bool operator==(const CyclotomicReal& a, const CyclotomicReal& b) {
    if (a.field_ != b.field_) return (a - b).is_zero();
    return a.c_ == b.c_;
}

long double CyclotomicReal::to_long_double() const {
    long double g = field_->gamma_numeric();
    long double acc = 0;
    for (size_t k = c_.size(); k-- > 0;) acc = acc * g + c_[k].convert_to<long double>();
    return acc;
}

std::string CyclotomicReal::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[k];
        if (k >= 1) os << "*g";
        if (k >= 2) os << "^" << k;
    }
    if (first) os << "0";
    os << " [g=2cos(pi/" << field_->L() << ")]";
    return os.str();
}

int sign_of(const CyclotomicReal& x) {
    if (x.is_zero()) return 0;
    if (x.is_rational()) return x.rational_value() > 0 ? 1 : -1;
    for (long prec = 64;; prec *= 2) {
        Interval acc(prec);
        evaluate(acc, x.coeffs(), x.field()->L(), prec);
        if (mpfr_sgn(acc.lo.v) > 0) return 1;
        if (mpfr_sgn(acc.hi.v) < 0) return -1;
        if (prec > (1L << 24)) throw ArithmeticError("sign refinement did not terminate");
    }
}

std::pair<long double, long double> enclose(const CyclotomicReal& x, long precision_bits) {
    Interval acc(precision_bits);
    evaluate(acc, x.coeffs(), x.field()->L(), precision_bits);
    return {mpfr_get_ld(acc.lo.v, MPFR_RNDD), mpfr_get_ld(acc.hi.v, MPFR_RNDU)};
}

long double minpoly_residual(const CyclotomicField& f, long precision_bits) {
    // plain round-to-nearest evaluation: a sanity check, not an enclosure
    Mpfr g(precision_bits), acc(precision_bits), tmp(precision_bits);
    if (f.L() <= 2) {
        mpfr_set_si(g.v, f.L() == 1 ? -2 : 0, MPFR_RNDN);
    } else {
        mpfr_const_pi(g.v, MPFR_RNDN);
        mpfr_div_ui(g.v, g.v, static_cast<unsigned long>(f.L()), MPFR_RNDN);
        mpfr_cos(g.v, g.v, MPFR_RNDN);
        mpfr_mul_2ui(g.v, g.v, 1, MPFR_RNDN);
    }
    const auto& m = f.minpoly();
    mpfr_set_z(acc.v, m.back().backend().data(), MPFR_RNDN);
    for (size_t k = m.size() - 1; k-- > 0;) {
        mpfr_mul(acc.v, acc.v, g.v, MPFR_RNDN);
        mpfr_set_z(tmp.v, m[k].backend().data(), MPFR_RNDN);
        mpfr_add(acc.v, acc.v, tmp.v, MPFR_RNDN);
    }
    mpfr_abs(acc.v, acc.v, MPFR_RNDN);
    return mpfr_get_ld(acc.v, MPFR_RNDN);
}

}  // namespace shephard
