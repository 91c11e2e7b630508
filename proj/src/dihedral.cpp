#include "shephard/dihedral.hpp"

#include "shephard/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace shephard {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::finite: return "finite";
        case Regime::euclidean: return "euclidean";
        case Regime::hyperbolic: return "hyperbolic";
    }
    return "?";
}

DihedralClassification classify(int p, int q, int r) {
    if (p < 2 || q < 2 || r < 2) throw InputError("labels must be >= 2");
    if (q % 2 == 1 && p != r) throw InputError("odd edge label requires equal vertex labels");
    DihedralClassification c;
    c.p = p;
    c.q = q;
    c.r = r;
    c.h = Rational(1, p) + Rational(2, q) + Rational(1, r);
    c.regime = c.h > 1 ? Regime::finite : (c.h == 1 ? Regime::euclidean : Regime::hyperbolic);
    c.transported = q % 2 == 1;
    if (c.transported) {
        c.tri_p = p;
        c.tri_q = q;
        c.tri_r = 2;
        std::ostringstream os;
        os << "<a, cac> in Delta(" << p << "," << q << ",2)";
        c.quotient = os.str();
    } else {
        c.tri_p = p;
        c.tri_q = q / 2;
        c.tri_r = r;
        std::ostringstream os;
        os << "Delta(" << p << "," << q / 2 << "," << r << ")";
        c.quotient = os.str();
    }
    if (c.regime != Regime::finite)
        c.center_word = SyllableWord::alternating('s', c.transported ? 2 * q : q);
    c.k = std::lcm(std::lcm(static_cast<long long>(p), static_cast<long long>(q)), static_cast<long long>(r));
    c.m = c.k / p + c.k / q + c.k / r - c.k;
    return c;
}

ChainData compute_chain_data(int p, int q, int r) {
    ChainData d;
    d.p = p;
    d.q = q;
    d.r = r;
    d.d2 = IntegerMatrix{{p, 0, q}, {0, r, q}};
    auto basis = kernel_basis(d.d2);
    if (basis.size() != 1) throw ArithmeticError("second homology is not cyclic");
    d.h2_generator = basis[0];
    if (d.h2_generator[2] < 0)
        for (auto& x : d.h2_generator) x = -x;
    d.pairing = d.h2_generator[2];
    const long long k = std::lcm(std::lcm(static_cast<long long>(p), static_cast<long long>(q)), static_cast<long long>(r));
    const long long kpr = std::lcm(static_cast<long long>(p), static_cast<long long>(r));
    d.matches_closed_form = d.h2_generator == std::vector<Integer>{-k / p, -k / r, k / q};
    d.matches_literal_form = d.h2_generator == std::vector<Integer>{-kpr / p, -kpr / r, k / q};
    return d;
}

std::string ShephardNormalForm::section_word() const {
    if (section.empty()) return "e";
    std::string s;
    for (int x : section) s += letter_char(x);
    return s;
}

// ---------------------------------------------------------------- session

DihedralSession::DihedralSession(int p, int q, int r, std::size_t budget) : info_(classify(p, q, r)) {
    if (infinite()) {
        store_ = std::make_unique<CayleyStore>(triangle_group(info_.tri_p, info_.tri_q, info_.tri_r), budget);
    } else {
        finite_ = std::make_unique<FiniteShephardGroup>(p, q, r, budget);
    }
}

CayleyStore& DihedralSession::store() {
    if (!store_) throw Inapplicable("finite regime has no triangle-group geometry");
    return *store_;
}

const FiniteShephardGroup& DihedralSession::finite_group() const {
    if (!finite_) throw Inapplicable("closure is only built in the finite regime");
    return *finite_;
}

namespace {

long long centred(long long e, long long n) {
    e %= n;
    if (e < 0) e += n;
    if (2 * e > n) e -= n;
    return e;
}

void push_power(std::vector<int>& out, int letter, long long e) {
    int x = e >= 0 ? letter : inverse_letter(letter);
    for (long long i = 0; i < (e >= 0 ? e : -e); ++i) out.push_back(x);
}

std::vector<int> inverse_letters(const std::vector<int>& w) {
    std::vector<int> out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse_letter(*it));
    return out;
}

}  // namespace

std::vector<int> DihedralSession::letters(const SyllableWord& w) const {
    std::vector<int> out;
    for (const Syllable& s : w.syllables()) {
        if (s.letter == 's') {
            push_power(out, kA, centred(s.exp, info_.p));
        } else if (info_.transported) {
            long long e = centred(s.exp, info_.r);
            if (e == 0) continue;
            out.push_back(kC);
            push_power(out, kA, e);
            out.push_back(kCInv);
        } else {
            push_power(out, kC, centred(s.exp, info_.r));
        }
    }
    return out;
}

FillResult DihedralSession::fill_closed(const std::vector<int>& letters) {
    return store().fill(Loop{0, letters});
}

ShephardNormalForm DihedralSession::normalize(const SyllableWord& w) {
    if (!infinite()) throw Inapplicable("normal forms need an infinite regime; use closure");
    CayleyStore& s = store();
    std::vector<int> L = letters(w);
    ShephardNormalForm nf;
    nf.delta = s.walk(0, L);
    nf.matrix = s.element(nf.delta);
    nf.section = s.section_letters(nf.delta);
    std::vector<int> loop = L;
    for (int x : inverse_letters(nf.section)) loop.push_back(x);
    nf.z = fill_closed(loop).n_q;
    return nf;
}

bool DihedralSession::is_trivial(const SyllableWord& w) {
    if (!infinite()) return finite_->evaluate(w) == finite_->identity();
    std::vector<int> L = letters(w);
    if (store().walk(0, L) != 0) return false;
    return fill_closed(L).n_q == 0;
}

bool DihedralSession::are_equal(const SyllableWord& u, const SyllableWord& v) {
    return is_trivial(u * v.inverse());
}

OrderResult DihedralSession::element_order(const SyllableWord& w, long long cutoff) {
    OrderResult res;
    if (!infinite()) {
        res.order = finite_->element_order(finite_->evaluate(w));
        res.reason = "closure";
        if (res.order > cutoff) {
            res.kind = OrderResult::Kind::exceeds_cutoff;
            res.reason = "order exceeds cutoff";
        }
        return res;
    }
    CayleyStore& s = store();
    std::vector<int> L = letters(w);
    Index v = s.walk(0, L);
    // finite-order elements of the triangle group have order dividing p, q' or r
    const long long bound = std::lcm(std::lcm(static_cast<long long>(info_.tri_p), static_cast<long long>(info_.tri_q)),
                                     static_cast<long long>(info_.tri_r));
    if (v != 0) {
        // rotation subgroup of the reflection representation: trace 1 + 2cos(theta)
        // for elliptic elements, >= 3 for parabolic / translation / loxodromic
        const RingMatrix& M = s.element(v);
        CyclotomicReal tr = M.value(0, 0) + M.value(1, 1) + M.value(2, 2);
        if (sign_of(tr - CyclotomicReal(tr.field(), Rational(3))) >= 0) {
            res.kind = OrderResult::Kind::infinite;
            res.reason = "image in the triangle group is not elliptic";
            return res;
        }
    }
    long long n = 1;
    Index x = v;
    while (x != 0 && n < bound) {
        x = s.walk(x, L);
        ++n;
    }
    if (x != 0) {
        res.kind = OrderResult::Kind::infinite;
        res.reason = "image in the triangle group has infinite order";
        return res;
    }
    if (n > cutoff) {
        res.kind = OrderResult::Kind::exceeds_cutoff;
        res.order = n;
        res.reason = "image order exceeds cutoff";
        return res;
    }
    std::vector<int> loop;
    for (long long i = 0; i < n; ++i) loop.insert(loop.end(), L.begin(), L.end());
    long long z = fill_closed(loop).n_q;
    if (z != 0) {
        res.kind = OrderResult::Kind::infinite;
        std::ostringstream os;
        os << "power " << n << " is central with exponent " << z;
        res.reason = os.str();
        return res;
    }
    res.order = n;
    res.reason = "power returns to the identity";
    return res;
}

// ---------------------------------------------------------------- girth

namespace {

// exponent sequences of alternating words starting with s; lexicographic
// minimum over rotations by `step` positions
bool is_canonical(const std::vector<int>& e, int step) {
    const size_t n = e.size();
    for (size_t rot = static_cast<size_t>(step); rot < n; rot += static_cast<size_t>(step)) {
        for (size_t i = 0; i < n; ++i) {
            int a = e[(i + rot) % n], b = e[i];
            if (a < b) return false;
            if (a > b) break;
        }
    }
    return true;
}

SyllableWord word_from(const std::vector<int>& e, char first) {
    std::vector<Syllable> syl;
    char cur = first;
    for (int x : e) {
        syl.push_back({cur, x});
        cur = cur == 's' ? 't' : 's';
    }
    return SyllableWord(syl);
}

}  // namespace

GirthCertificate certify_girth(int p, int q, int r, int max_syllables, const std::atomic<bool>* interrupt,
                               std::size_t budget) {
    DihedralSession session(p, q, r, budget);
    if (!session.infinite()) throw Inapplicable("girth certification needs an infinite dihedral Shephard group");
    GirthCertificate cert;
    cert.p = p;
    cert.q = q;
    cert.r = r;
    cert.bound = 2 * q;
    const int limit = std::max(cert.bound - 1, max_syllables);
    const bool swap = p == r;

    auto check = [&](const SyllableWord& w, int length) {
        if (!session.is_trivial(w)) return;
        if (length < cert.bound) cert.trivial_below_bound.push_back(w);
        if (!cert.minimal_trivial_length) {
            cert.minimal_trivial_length = length;
            cert.minimal_trivial_witness = w;
        }
    };

    for (int n = 1; n <= limit; ++n) {
        if (n > 1 && n % 2 == 1) {
            cert.examined_through = n;  // no cyclically reduced words of odd length > 1
            continue;
        }
        if (n >= cert.bound && cert.minimal_trivial_length) break;
        if (n == 1) {
            for (int e = 1; e < p; ++e) {
                ++cert.raw_candidates;
                ++cert.candidates;
                check(word_from({e}, 's'), 1);
            }
            if (!swap)
                for (int e = 1; e < r; ++e) {
                    ++cert.raw_candidates;
                    ++cert.candidates;
                    check(word_from({e}, 't'), 1);
                }
            else
                cert.raw_candidates += static_cast<size_t>(r - 1);
            cert.examined_through = 1;
            continue;
        }
        std::vector<int> e(static_cast<size_t>(n), 1);
        for (;;) {
            if (interrupt && interrupt->load()) {
                cert.interrupted = true;
                return cert;
            }
            cert.raw_candidates += 2;  // the s-first word and its t-first rotation
            if (is_canonical(e, swap ? 1 : 2)) {
                ++cert.candidates;
                check(word_from(e, 's'), n);
            }
            // odometer: even positions are s exponents, odd positions t exponents
            size_t i = 0;
            while (i < e.size()) {
                int top = i % 2 == 0 ? p - 1 : r - 1;
                if (e[i] < top) {
                    ++e[i];
                    break;
                }
                e[i] = 1;
                ++i;
            }
            if (i == e.size()) break;
        }
        cert.examined_through = n;
    }
    cert.certified = cert.trivial_below_bound.empty() && cert.examined_through >= cert.bound - 1;
    return cert;
}

// ---------------------------------------------------------------- homomorphisms

Presentation shephard_presentation(int p, int q, int r) {
    Presentation P;
    P.generators = {"s", "t"};
    P.relators.push_back({{0, p}});
    P.relator_names.push_back("s^" + std::to_string(p));
    P.relators.push_back({{1, r}});
    P.relator_names.push_back("t^" + std::to_string(r));
    GroupWord st, ts;
    for (int i = 0; i < q; ++i) {
        st = concat(st, {{i % 2, 1}});
        ts = concat(ts, {{(i + 1) % 2, 1}});
    }
    P.relators.push_back(concat(st, invert(ts)));
    P.relator_names.push_back("braid(" + std::to_string(q) + ")");
    return P;
}

GroupWord substitute(const GroupWord& w, const std::vector<GroupWord>& images) {
    GroupWord out;
    for (const auto& [g, e] : w) out = concat(out, power(images.at(static_cast<size_t>(g)), e));
    return out;
}

HomomorphismReport verify_homomorphism(const Presentation& source, const std::vector<GroupWord>& images,
                                       const std::vector<std::string>& target_names,
                                       const TrivialityOracle& target) {
    if (images.size() != source.generators.size()) throw InputError("one image per source generator expected");
    HomomorphismReport rep;
    rep.ok = true;
    for (size_t i = 0; i < source.relators.size(); ++i) {
        GroupWord img = substitute(source.relators[i], images);
        RelatorVerdict v;
        v.name = i < source.relator_names.size() ? source.relator_names[i] : render(source.relators[i], source.generators);
        v.image = render(img, target_names);
        v.trivial = target(img);
        rep.ok = rep.ok && v.trivial;
        rep.relators.push_back(v);
    }
    return rep;
}

namespace {

SyllableWord to_syllables(const GroupWord& w) {
    std::vector<Syllable> syl;
    for (const auto& [g, e] : w) syl.push_back({g == 0 ? 's' : 't', e});
    return SyllableWord(syl);
}

}  // namespace

HomomorphismReport verify_odd_embedding(int p, int q) {
    if (q % 2 == 0) throw InputError("the embedding is for odd edge labels");
    Presentation src = shephard_presentation(p, q, p);
    src.generators = {"sigma", "tau"};
    DihedralSession target(p, 2 * q, 2);
    std::vector<GroupWord> images{{{0, 1}}, {{1, 1}, {0, 1}, {1, 1}}};
    return verify_homomorphism(src, images, {"s", "t"},
                               [&](const GroupWord& w) { return target.is_trivial(to_syllables(w)); });
}

CentralPairOracle::CentralPairOracle(int p, int q, int r, std::vector<std::vector<int>> letters,
                                     std::vector<long long> central, std::array<long long, 3> face_weight)
    : store_(triangle_group(p, q, r)), letters_(std::move(letters)), central_(std::move(central)),
      weight_(face_weight) {
    if (store_.group().kind == GeometryKind::spherical) throw Inapplicable("pair oracle needs an infinite triangle group");
}

CentralPairOracle::Pair CentralPairOracle::evaluate(const GroupWord& w) {
    std::vector<int> L;
    long long fiber = 0;
    for (const auto& [g, e] : w) {
        const auto& gl = letters_.at(static_cast<size_t>(g));
        for (long long i = 0; i < (e >= 0 ? e : -e); ++i) {
            if (e > 0) {
                L.insert(L.end(), gl.begin(), gl.end());
                fiber += central_[static_cast<size_t>(g)];
            } else {
                auto inv = inverse_letters(gl);
                L.insert(L.end(), inv.begin(), inv.end());
                fiber -= central_[static_cast<size_t>(g)];
            }
        }
    }
    Pair out;
    out.delta = store_.walk(0, L);
    std::vector<int> loop = L;
    for (int x : inverse_letters(store_.section_letters(out.delta))) loop.push_back(x);
    FillResult f = store_.fill(Loop{0, loop});
    out.fiber = fiber + weight_[0] * f.n_p + weight_[1] * f.n_r + weight_[2] * f.n_q;
    return out;
}

bool CentralPairOracle::is_trivial(const GroupWord& w) {
    Pair x = evaluate(w);
    return x.delta == 0 && x.fiber == 0;
}

namespace {

long long lcm3(int p, int q, int r) {
    return std::lcm(std::lcm(static_cast<long long>(p), static_cast<long long>(q)), static_cast<long long>(r));
}

}  // namespace

// generators: s = 0, t = 1, phi = 2, u = 3
CentralPairOracle extended_shephard_oracle(int p, int q, int r) {
    const long long k = lcm3(p, q, r), m = k / p + k / q + k / r - k;
    // (ac)^q in the filling is (st)^q = phi^{-qm}
    return CentralPairOracle(p, q, r, {{kA}, {kC}, {}, {kAInv, kCInv}}, {0, 0, 1, -m}, {0, 0, -q * m});
}

// generators: a~ = 0, b~ = 1, c~ = 2, z = 3
CentralPairOracle lifted_triangle_oracle(int p, int q, int r) {
    const long long k = lcm3(p, q, r);
    // b~ = a~^-1 zeta c~^-1 with zeta = z^k; a^p, c^r lift to zeta, (ac)^q to zeta^{q-1}
    return CentralPairOracle(p, q, r, {{kA}, {kAInv, kCInv}, {kC}, {}}, {0, k, 0, 1}, {k, k, k * (q - 1)});
}

Presentation extended_shephard_presentation(int p, int q, int r) {
    const long long k = lcm3(p, q, r), m = k / p + k / q + k / r - k;
    Presentation P;
    P.generators = {"s", "t", "phi", "u"};
    GroupWord st, ts;
    for (int i = 0; i < q; ++i) {
        st = concat(st, {{0, 1}, {1, 1}});
        ts = concat(ts, {{1, 1}, {0, 1}});
    }
    P.relators = {{{0, p}},
                  {{1, r}},
                  concat(st, {{2, q * m}}),
                  concat(ts, {{2, q * m}}),
                  {{0, 1}, {2, 1}, {0, -1}, {2, -1}},
                  {{1, 1}, {2, 1}, {1, -1}, {2, -1}},
                  {{3, 1}, {2, m}, {1, 1}, {0, 1}}};
    P.relator_names = {"s^p", "t^r", "(st)^q phi^qm", "(ts)^q phi^qm", "[s,phi]", "[t,phi]", "u phi^m t s"};
    return P;
}

Presentation lifted_triangle_presentation(int p, int q, int r) {
    const long long k = lcm3(p, q, r);
    Presentation P;
    P.generators = {"a~", "b~", "c~", "z"};
    P.relators = {{{0, p}, {3, -k}},
                  {{1, q}, {3, -k}},
                  {{2, r}, {3, -k}},
                  {{0, 1}, {1, 1}, {2, 1}, {3, -k}},
                  {{0, 1}, {3, 1}, {0, -1}, {3, -1}},
                  {{1, 1}, {3, 1}, {1, -1}, {3, -1}},
                  {{2, 1}, {3, 1}, {2, -1}, {3, -1}}};
    P.relator_names = {"a~^p z^-k", "b~^q z^-k", "c~^r z^-k", "a~b~c~ z^-k", "[a~,z]", "[b~,z]", "[c~,z]"};
    return P;
}

LatticeMapsReport verify_lattice_maps(int p, int q, int r) {
    LatticeMapsReport rep;
    rep.p = p;
    rep.q = q;
    rep.r = r;
    if (Rational(1, p) + Rational(1, q) + Rational(1, r) >= 1) throw Inapplicable("lattice maps need h < 1");
    const long long k = lcm3(p, q, r), m = k / p + k / q + k / r - k;
    rep.k = k;
    rep.m = m;
    CentralPairOracle G = extended_shephard_oracle(p, q, r);
    CentralPairOracle D = lifted_triangle_oracle(p, q, r);
    Presentation PG = extended_shephard_presentation(p, q, r);
    Presentation PD = lifted_triangle_presentation(p, q, r);
    // Delta~_k -> G
    std::vector<GroupWord> phi_img{{{2, k / p}, {0, 1}}, {{2, k / q}, {3, 1}}, {{2, k / r}, {1, 1}}, {{2, 1}}};
    // G -> Delta~_k
    std::vector<GroupWord> psi_img{{{3, -k / p}, {0, 1}}, {{3, -k / r}, {2, 1}}, {{3, 1}}, {{3, -k / q}, {1, 1}}};
    rep.phi_map = verify_homomorphism(PD, phi_img, PG.generators, [&](const GroupWord& w) { return G.is_trivial(w); });
    rep.psi_map = verify_homomorphism(PG, psi_img, PD.generators, [&](const GroupWord& w) { return D.is_trivial(w); });
    rep.psi_phi_identity = true;
    for (int g = 0; g < 4; ++g) {
        GroupWord back = substitute(phi_img[static_cast<size_t>(g)], psi_img);
        if (!D.is_trivial(concat(back, {{g, -1}}))) rep.psi_phi_identity = false;
    }
    rep.phi_psi_identity = true;
    for (int g = 0; g < 4; ++g) {
        GroupWord back = substitute(psi_img[static_cast<size_t>(g)], phi_img);
        if (!G.is_trivial(concat(back, {{g, -1}}))) rep.phi_psi_identity = false;
    }
    return rep;
}

}  // namespace shephard
