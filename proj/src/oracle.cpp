#include "shephard/dihedral.hpp"
#include "shephard/errors.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <numeric>

// Second evaluation path for the word problem.  Nothing here touches the
// Cayley store: the triangle group is rebuilt as concrete isometries of the
// plane and the central exponent of a closed loop is read off its signed area.
//
// For a loop in the Cayley graph drawn through the orbit of a base point,
//   area = n_P A_P + n_R A_R + n_Q A_Q,   #a = p n_P + q n_Q,   #c = r n_R + q n_Q
// (A_* = signed areas of the face boundaries), so
//   n_Q = (area - A_P #a / p - A_R #c / r) / (A_Q - q A_P / p - q A_R / r).
// The denominator is minus q times the area per vertex of the tiling, never 0.

namespace shephard {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;
using Mat3R = std::array<Real, 9>;
using Mat3E = std::array<CyclotomicReal, 9>;

template <class T>
std::array<T, 9> mul(const std::array<T, 9>& a, const std::array<T, 9>& b) {
    std::array<T, 9> c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            T acc = a[3 * i] * b[j];
            acc = acc + a[3 * i + 1] * b[3 + j];
            acc = acc + a[3 * i + 2] * b[6 + j];
            c[static_cast<size_t>(3 * i + j)] = acc;
        }
    return c;
}

template <class T>
std::array<T, 3> act(const std::array<T, 9>& a, const std::array<T, 3>& x) {
    std::array<T, 3> y;
    for (int i = 0; i < 3; ++i) y[static_cast<size_t>(i)] = a[3 * i] * x[0] + a[3 * i + 1] * x[1] + a[3 * i + 2] * x[2];
    return y;
}

// letter sequence: 0 = a, 1 = a^-1, 2 = c, 3 = c^-1 (own transport, independent of the session)
std::vector<int> word_letters(const DihedralClassification& info, const SyllableWord& w) {
    std::vector<int> out;
    auto rep = [&](int letter, long long e, long long n) {
        e %= n;
        if (e < 0) e += n;
        if (2 * e > n) e -= n;
        for (long long i = 0; i < (e >= 0 ? e : -e); ++i) out.push_back(e >= 0 ? letter : letter + 1);
    };
    for (const Syllable& s : w.syllables()) {
        if (s.letter == 's') {
            rep(0, s.exp, info.p);
        } else if (info.transported) {
            // t -> c a c^-1 inside Delta(p, q, 2)
            long long e = ((s.exp % info.r) + info.r) % info.r;
            if (e == 0) continue;
            out.push_back(2);
            rep(0, s.exp, info.r);
            out.push_back(3);
        } else {
            rep(2, s.exp, info.r);
        }
    }
    return out;
}

}  // namespace

struct GeometricOracle::Model {
    DihedralClassification info;
    std::unique_ptr<FiniteShephardGroup> finite;
    bool euclidean = false;
    int P = 0, Q = 0, R = 0;  // triangle parameters

    // euclidean: affine maps of the plane as 3x3 matrices over Q(2cos(pi/12))
    FieldPtr F;
    std::array<Mat3E, 4> E;
    std::array<CyclotomicReal, 3> ex0;
    CyclotomicReal eAP, eAR, eAQ;

    // hyperbolic: hyperboloid model, x^2 + y^2 - w^2 = -1
    std::array<Mat3R, 4> H;
    std::array<Real, 3> hx0;
    Real hAP, hAR, hAQ;

    CyclotomicReal ev(long long num, long long den) const { return CyclotomicReal(F, Rational(num, den)); }
    // cos(2 pi / n), sin(2 pi / n) in the conductor-24 field
    CyclotomicReal cos2pi(int n) const { return CyclotomicReal::two_cos_in(F, 24 / n) * ev(1, 2); }
    CyclotomicReal sin2pi(int n) const { return CyclotomicReal::two_cos_in(F, 6 - 24 / n) * ev(1, 2); }

    Mat3E erot(int n, const CyclotomicReal& cx) const {
        CyclotomicReal co = cos2pi(n), si = sin2pi(n), zero = ev(0, 1), one = ev(1, 1);
        // x -> R x + (c - R c) with c = (cx, 0)
        return {co, -si, cx - co * cx, si, co, zero - si * cx, zero, zero, one};
    }

    Mat3R hrot(const Real& theta) const {
        using boost::multiprecision::cos;
        using boost::multiprecision::sin;
        return {cos(theta), -sin(theta), Real(0), sin(theta), cos(theta), Real(0), Real(0), Real(0), Real(1)};
    }

    void build() {
        const int P_ = P, R_ = R;
        if (euclidean) {
            F = CyclotomicField::get(12);
            if (24 % P_ != 0 || 24 % R_ != 0) throw ArithmeticError("unexpected euclidean rotation order");
            E[0] = erot(P_, ev(0, 1));
            E[1] = erot(P_, ev(0, 1));
            for (int i = 1; i < P_ - 1; ++i) E[1] = mul(E[1], E[0]);
            E[2] = erot(R_, ev(1, 1));
            E[3] = E[2];
            for (int i = 1; i < R_ - 1; ++i) E[3] = mul(E[3], E[2]);
            ex0 = {ev(2, 7), ev(1, 9), ev(1, 1)};
            eAP = earea(std::vector<int>(static_cast<size_t>(P_), 0));
            eAR = earea(std::vector<int>(static_cast<size_t>(R_), 2));
            eAQ = earea(qloop());
            check_relations_exact();
        } else {
            using boost::multiprecision::acosh;
            using boost::multiprecision::cos;
            using boost::multiprecision::cosh;
            using boost::multiprecision::sin;
            using boost::multiprecision::sinh;
            const Real pi = boost::math::constants::pi<Real>();
            // distance between the rotation centres a, c (side opposite the q-vertex)
            Real ch = (cos(pi / Q) + cos(pi / P_) * cos(pi / R_)) / (sin(pi / P_) * sin(pi / R_));
            Real l = acosh(ch);
            Mat3R boost_l{cosh(l), Real(0), sinh(l), Real(0), Real(1), Real(0), sinh(l), Real(0), cosh(l)};
            Mat3R boost_m{cosh(l), Real(0), -sinh(l), Real(0), Real(1), Real(0), -sinh(l), Real(0), cosh(l)};
            H[0] = hrot(2 * pi / P_);
            H[1] = hrot(-2 * pi / P_);
            H[2] = mul(mul(boost_l, hrot(2 * pi / R_)), boost_m);
            H[3] = mul(mul(boost_l, hrot(-2 * pi / R_)), boost_m);
            // generic base point
            Real bx = Real(2) / 7, by = Real(1) / 9;
            hx0 = {bx, by, boost::multiprecision::sqrt(1 + bx * bx + by * by)};
            hAP = harea(std::vector<int>(static_cast<size_t>(P_), 0));
            hAR = harea(std::vector<int>(static_cast<size_t>(R_), 2));
            hAQ = harea(qloop());
            check_relations_numeric();
        }
    }

    std::vector<int> qloop() const {
        std::vector<int> w;
        for (int i = 0; i < Q; ++i) {
            w.push_back(0);
            w.push_back(2);
        }
        return w;
    }

    Mat3E eword(const std::vector<int>& L) const {
        Mat3E m{ev(1, 1), ev(0, 1), ev(0, 1), ev(0, 1), ev(1, 1), ev(0, 1), ev(0, 1), ev(0, 1), ev(1, 1)};
        for (int x : L) m = mul(m, E[static_cast<size_t>(x)]);
        return m;
    }
    Mat3R hword(const std::vector<int>& L) const {
        Mat3R m{Real(1), Real(0), Real(0), Real(0), Real(1), Real(0), Real(0), Real(0), Real(1)};
        for (int x : L) m = mul(m, H[static_cast<size_t>(x)]);
        return m;
    }

    static bool eidentity(const Mat3E& m) {
        for (int i = 0; i < 9; ++i) {
            CyclotomicReal want(m[static_cast<size_t>(i)].field(), Rational(i % 4 == 0 ? 1 : 0));
            if (m[static_cast<size_t>(i)] != want) return false;
        }
        return true;
    }
    static bool hidentity(const Mat3R& m) {
        for (int i = 0; i < 9; ++i) {
            Real d = m[static_cast<size_t>(i)] - (i % 4 == 0 ? 1 : 0);
            if (abs(d) > Real("1e-25")) return false;
        }
        return true;
    }

    // twice the signed area (shoelace) of the orbit polygon
    CyclotomicReal earea(const std::vector<int>& L) const {
        Mat3E m = eword({});
        std::array<CyclotomicReal, 3> prev = ex0, cur;
        CyclotomicReal acc = ev(0, 1);
        for (int x : L) {
            m = mul(m, E[static_cast<size_t>(x)]);
            cur = act(m, ex0);
            acc = acc + prev[0] * cur[1] - cur[0] * prev[1];
            prev = cur;
        }
        return acc;
    }

    static Real lorentz(const std::array<Real, 3>& u, const std::array<Real, 3>& v) {
        return u[0] * v[0] + u[1] * v[1] - u[2] * v[2];
    }
    static Real tri(const std::array<Real, 3>& u, const std::array<Real, 3>& v, const std::array<Real, 3>& w) {
        Real det = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
                   u[2] * (v[0] * w[1] - v[1] * w[0]);
        return 2 * atan2(det, 1 - lorentz(u, v) - lorentz(v, w) - lorentz(w, u));
    }
    // signed area of the geodesic orbit polygon, fanned from the base point
    Real harea(const std::vector<int>& L) const {
        Mat3R m = hword({});
        std::array<Real, 3> prev = hx0, cur;
        Real acc = 0;
        for (int x : L) {
            m = mul(m, H[static_cast<size_t>(x)]);
            cur = act(m, hx0);
            acc += tri(hx0, prev, cur);
            prev = cur;
        }
        return acc;
    }

    void check_relations_exact() const {
        std::vector<int> ap(static_cast<size_t>(P), 0), cr(static_cast<size_t>(R), 2);
        if (!eidentity(eword(ap)) || !eidentity(eword(cr)) || !eidentity(eword(qloop())))
            throw ArithmeticError("affine model violates the triangle relations");
    }
    void check_relations_numeric() const {
        std::vector<int> ap(static_cast<size_t>(P), 0), cr(static_cast<size_t>(R), 2);
        if (!hidentity(hword(ap)) || !hidentity(hword(cr)) || !hidentity(hword(qloop())))
            throw ArithmeticError("hyperboloid model violates the triangle relations");
    }

    long long central_exponent(const std::vector<int>& L) const {
        long long na = 0, nc = 0;
        for (int x : L) {
            if (x == 0) ++na;
            if (x == 1) --na;
            if (x == 2) ++nc;
            if (x == 3) --nc;
        }
        if (euclidean) {
            if (!eidentity(eword(L))) throw ArithmeticError("loop is not closed");
            CyclotomicReal num = earea(L) - eAP * ev(na, P) - eAR * ev(nc, R);
            CyclotomicReal den = eAQ - eAP * ev(Q, P) - eAR * ev(Q, R);
            CyclotomicReal n = num / den;
            if (!n.is_rational()) throw ArithmeticError("area quotient is irrational");
            Rational v = n.rational_value();
            if (denominator(v) != 1) throw ArithmeticError("area quotient is not an integer");
            return numerator(v).convert_to<long long>();
        }
        if (!hidentity(hword(L))) throw ArithmeticError("loop is not closed");
        Real num = harea(L) - hAP * na / P - hAR * nc / R;
        Real den = hAQ - hAP * Q / P - hAR * Q / R;
        Real n = num / den;
        Real rounded = boost::multiprecision::round(n);
        if (abs(n - rounded) > Real("1e-20")) throw ArithmeticError("area quotient is not an integer");
        return rounded.convert_to<long long>();
    }

    bool closes(const std::vector<int>& L) const { return euclidean ? eidentity(eword(L)) : hidentity(hword(L)); }
};

GeometricOracle::GeometricOracle(int p, int q, int r) : model_(std::make_unique<Model>()) {
    Model& m = *model_;
    m.info = classify(p, q, r);
    if (m.info.regime == Regime::finite) {
        m.finite = std::make_unique<FiniteShephardGroup>(p, q, r);
        return;
    }
    m.P = m.info.tri_p;
    m.Q = m.info.tri_q;
    m.R = m.info.tri_r;
    m.euclidean = m.info.regime == Regime::euclidean;
    m.build();
}

GeometricOracle::~GeometricOracle() = default;
GeometricOracle::GeometricOracle(GeometricOracle&&) noexcept = default;
GeometricOracle& GeometricOracle::operator=(GeometricOracle&&) noexcept = default;

bool GeometricOracle::is_trivial(const SyllableWord& w) {
    Model& m = *model_;
    if (m.finite) return m.finite->matrix_is_identity(m.finite->matrix_of(w));
    std::vector<int> L = word_letters(m.info, w);
    if (!m.closes(L)) return false;
    return m.central_exponent(L) == 0;
}

long long GeometricOracle::central_exponent(const SyllableWord& w) {
    Model& m = *model_;
    if (m.finite) throw Inapplicable("no central exponent in the finite regime");
    return m.central_exponent(word_letters(m.info, w));
}

bool brute_force_equal(int p, int q, int r, const SyllableWord& u, const SyllableWord& v) {
    if (u == v) return true;
    GeometricOracle o(p, q, r);
    return o.are_equal(u, v);
}

}  // namespace shephard
