#include "shephard/finite_group.hpp"

#include "shephard/errors.hpp"

#include <deque>
#include <numeric>
#include <sstream>

namespace shephard {

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

FiniteShephardGroup::FiniteShephardGroup(int p, int q, int r, std::size_t budget) : p_(p), q_(q), r_(r) {
    if (q % 2 == 1 && p != r) throw InputError("odd edge label requires equal vertex labels");
    if (Rational(1, p) + Rational(2, q) + Rational(1, r) <= 1)
        throw Inapplicable("closure requires a finite group (h > 1)");
    const int M = std::lcm(std::lcm(p, q), r);
    field_ = CyclotomicField::get(2 * M);
    auto half = [&](long long j) { return CyclotomicReal::two_cos_in(field_, j) / CyclotomicReal(field_, Rational(2)); };
    // e^{i pi j / M}
    auto cis = [&](long long j) { return Complex{half(2 * j), half(M - 2 * j)}; };
    const Complex zero{CyclotomicReal(field_, Rational(0)), CyclotomicReal(field_, Rational(0))};
    const Complex one{CyclotomicReal(field_, Rational(1)), CyclotomicReal(field_, Rational(0))};

    Complex y = zero;
    if (q > 2) {
        CyclotomicReal c = -(CyclotomicReal::two_cos_in(field_, 4LL * M / q) +
                             CyclotomicReal::two_cos_in(field_, 2LL * M / p - 2LL * M / r));
        Complex e = cis(M / p + M / r);
        y = {e.re * c, e.im * c};
    }
    if (q == 2) {
        // commuting reflections: orthogonal roots
        gens_[0] = {cis(2 * M / p), zero, zero, one};
        gens_[1] = {one, zero, zero, cis(2 * M / r)};
    } else {
        gens_[0] = {cis(2 * M / p), one, zero, one};
        gens_[1] = {one, zero, y, cis(2 * M / r)};
    }

    Mat2 id{one, zero, zero, one};
    elements_.push_back(id);
    index_.emplace(key(id), 0);
    parent_.push_back(-1);
    parent_gen_.push_back(-1);
    std::vector<std::array<int, 2>> fwd;
    for (size_t i = 0; i < elements_.size(); ++i) {
        std::array<int, 2> row{};
        for (int g = 0; g < 2; ++g) {
            Mat2 m = mat_mul(elements_[i], gens_[static_cast<size_t>(g)]);
            std::string k = key(m);
            auto it = index_.find(k);
            if (it == index_.end()) {
                if (elements_.size() >= budget) throw BudgetExceeded("closure exceeded element budget");
                int id2 = static_cast<int>(elements_.size());
                elements_.push_back(m);
                index_.emplace(k, id2);
                parent_.push_back(static_cast<int>(i));
                parent_gen_.push_back(2 * g);
                row[static_cast<size_t>(g)] = id2;
            } else {
                row[static_cast<size_t>(g)] = it->second;
            }
        }
        fwd.push_back(row);
    }
    table_.assign(elements_.size(), {-1, -1, -1, -1});
    for (size_t i = 0; i < elements_.size(); ++i) {
        table_[i][0] = fwd[i][0];
        table_[i][2] = fwd[i][1];
        table_[static_cast<size_t>(fwd[i][0])][1] = static_cast<int>(i);
        table_[static_cast<size_t>(fwd[i][1])][3] = static_cast<int>(i);
    }
}

std::string FiniteShephardGroup::key(const Mat2& m) const {
    std::ostringstream os;
    for (const Complex& z : m) {
        for (const auto& c : z.re.coeffs()) os << c << ',';
        os << '|';
        for (const auto& c : z.im.coeffs()) os << c << ',';
        os << ';';
    }
    return os.str();
}

int FiniteShephardGroup::evaluate(const SyllableWord& w) const {
    int x = 0;
    for (const Syllable& s : w.syllables()) {
        int order = s.letter == 's' ? p_ : r_;
        long long e = ((s.exp % order) + order) % order;
        int g = s.letter == 's' ? 0 : 2;
        for (long long i = 0; i < e; ++i) x = mul_gen(x, g);
    }
    return x;
}

int FiniteShephardGroup::element_order(int element) const {
    // right-multiplying by the element's witness word repeatedly
    SyllableWord w = witness(element);
    int x = element, n = 1;
    while (x != 0) {
        for (const Syllable& s : w.syllables()) {
            int g = s.letter == 's' ? 0 : 2;
            for (long long i = 0; i < s.exp; ++i) x = mul_gen(x, g);
        }
        ++n;
        if (n > static_cast<int>(order()) + 1) throw ArithmeticError("element order exceeds group order");
    }
    return n;
}

SyllableWord FiniteShephardGroup::witness(int element) const {
    std::vector<Syllable> rev;
    while (element != 0) {
        rev.push_back({parent_gen_[static_cast<size_t>(element)] == 0 ? 's' : 't', 1});
        element = parent_[static_cast<size_t>(element)];
    }
    return SyllableWord(std::vector<Syllable>(rev.rbegin(), rev.rend()));
}

Mat2 FiniteShephardGroup::matrix_of(const SyllableWord& w) const {
    Mat2 m = elements_[0];
    for (const Syllable& s : w.syllables()) {
        int order = s.letter == 's' ? p_ : r_;
        long long e = ((s.exp % order) + order) % order;
        const Mat2& g = gens_[s.letter == 's' ? 0 : 1];
        for (long long i = 0; i < e; ++i) m = mat_mul(m, g);
    }
    return m;
}

bool FiniteShephardGroup::matrix_is_identity(const Mat2& m) const { return key(m) == key(elements_[0]); }

bool FiniteShephardGroup::relators_hold() const {
    auto pw = [](const Mat2& g, int n, const Mat2& id) {
        Mat2 m = id;
        for (int i = 0; i < n; ++i) m = mat_mul(m, g);
        return m;
    };
    const Mat2& id = elements_[0];
    if (!matrix_is_identity(pw(gens_[0], p_, id)) || !matrix_is_identity(pw(gens_[1], r_, id))) return false;
    Mat2 st = id, ts = id;
    for (int i = 0; i < q_; ++i) {
        st = mat_mul(st, gens_[static_cast<size_t>(i % 2)]);
        ts = mat_mul(ts, gens_[static_cast<size_t>((i + 1) % 2)]);
    }
    return key(st) == key(ts);
}

// ---------------------------------------------------------------- coset enumeration

namespace {

class CosetTable {
public:
    CosetTable(int gens, std::size_t max_cosets) : cols_(2 * gens), max_(max_cosets) { add(); }

    int add() {
        if (table_.size() >= max_) throw BudgetExceeded("coset enumeration exceeded its budget");
        table_.emplace_back(static_cast<size_t>(cols_), -1);
        parent_.push_back(static_cast<int>(table_.size()) - 1);
        return static_cast<int>(table_.size()) - 1;
    }
    bool alive(int c) const { return parent_[static_cast<size_t>(c)] == c; }
    int& at(int c, int x) { return table_[static_cast<size_t>(c)][static_cast<size_t>(x)]; }
    std::size_t size() const { return table_.size(); }

    void define(int c, int x) {
        int d = add();
        at(c, x) = d;
        at(d, x ^ 1) = c;
    }

    int rep(int c) {
        int l = c;
        while (parent_[static_cast<size_t>(l)] != l) l = parent_[static_cast<size_t>(l)];
        while (parent_[static_cast<size_t>(c)] != l) {
            int next = parent_[static_cast<size_t>(c)];
            parent_[static_cast<size_t>(c)] = l;
            c = next;
        }
        return l;
    }

    void merge(int k, int l, std::vector<int>& queue) {
        k = rep(k);
        l = rep(l);
        if (k == l) return;
        if (k > l) std::swap(k, l);
        parent_[static_cast<size_t>(l)] = k;
        queue.push_back(l);
    }

    void coincidence(int a, int b) {
        std::vector<int> queue;
        merge(a, b, queue);
        for (size_t i = 0; i < queue.size(); ++i) {
            int g = queue[i];
            for (int x = 0; x < cols_; ++x) {
                int d = at(g, x);
                if (d < 0) continue;
                at(d, x ^ 1) = -1;
                int mu = rep(g), nu = rep(d);
                if (at(mu, x) >= 0) {
                    merge(nu, at(mu, x), queue);
                } else if (at(nu, x ^ 1) >= 0) {
                    merge(mu, at(nu, x ^ 1), queue);
                } else {
                    at(mu, x) = nu;
                    at(nu, x ^ 1) = mu;
                }
            }
        }
    }

    void scan_and_fill(int c, const std::vector<int>& w) {
        if (w.empty()) return;
        int f = c, b = c;
        int i = 0, j = static_cast<int>(w.size()) - 1;
        for (;;) {
            while (i <= j && at(f, w[static_cast<size_t>(i)]) >= 0) f = at(f, w[static_cast<size_t>(i++)]);
            if (i > j) {
                if (f != b) coincidence(f, b);
                return;
            }
            while (j >= i && at(b, w[static_cast<size_t>(j)] ^ 1) >= 0) b = at(b, w[static_cast<size_t>(j--)] ^ 1);
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                at(f, w[static_cast<size_t>(i)]) = b;
                at(b, w[static_cast<size_t>(i)] ^ 1) = f;
                return;
            }
            define(f, w[static_cast<size_t>(i)]);
        }
    }

    int cols() const { return cols_; }

private:
    int cols_;
    std::size_t max_;
    std::vector<std::vector<int>> table_;
    std::vector<int> parent_;
};

}  // namespace

std::size_t todd_coxeter_index(int generators, const std::vector<std::vector<int>>& relators,
                               const std::vector<std::vector<int>>& subgroup, std::size_t max_cosets) {
    CosetTable t(generators, max_cosets);
    for (const auto& h : subgroup) t.scan_and_fill(0, h);
    for (int c = 0; c < static_cast<int>(t.size()); ++c) {
        if (!t.alive(c)) continue;
        for (const auto& rel : relators) {
            t.scan_and_fill(c, rel);
            if (!t.alive(c)) break;
        }
        if (!t.alive(c)) continue;
        for (int x = 0; x < t.cols(); ++x)
            if (t.at(c, x) < 0) t.define(c, x);
    }
    std::size_t live = 0;
    for (int c = 0; c < static_cast<int>(t.size()); ++c)
        if (t.alive(c)) ++live;
    return live;
}

std::vector<std::vector<int>> shephard_relators(int p, int q, int r) {
    std::vector<std::vector<int>> rels;
    rels.emplace_back(static_cast<size_t>(p), 0);
    rels.emplace_back(static_cast<size_t>(r), 2);
    std::vector<int> braid;
    for (int i = 0; i < q; ++i) braid.push_back(i % 2 == 0 ? 0 : 2);
    std::vector<int> other;
    for (int i = 0; i < q; ++i) other.push_back(i % 2 == 0 ? 2 : 0);
    for (auto it = other.rbegin(); it != other.rend(); ++it) braid.push_back(*it ^ 1);
    rels.push_back(braid);
    return rels;
}

}  // namespace shephard
