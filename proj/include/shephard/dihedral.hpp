#pragma once

#include "shephard/finite_group.hpp"
#include "shephard/integer_matrix.hpp"
#include "shephard/tiling.hpp"
#include "shephard/words.hpp"

#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace shephard {

enum class Regime { finite, euclidean, hyperbolic };
std::string to_string(Regime r);

struct DihedralClassification {
    int p = 0, q = 0, r = 0;
    Rational h;
    Regime regime = Regime::finite;
    // odd q: every computation happens inside Sh(p, 2q, 2) via s -> s, t -> t s t
    bool transported = false;
    int tri_p = 0, tri_q = 0, tri_r = 0;  // triangle group carrying the Cayley geometry
    std::string quotient;                 // descriptor of D
    SyllableWord center_word;             // empty when finite
    long long k = 0, m = 0;               // k = lcm(p,q,r), m = k/p + k/q + k/r - k
};

// throws InputError on labels < 2 or odd q with p != r
DihedralClassification classify(int p, int q, int r);

// Cellular data of the one-vertex complex with 2-cells a^p, c^r, (ac)^q.
struct ChainData {
    int p = 0, q = 0, r = 0;  // triangle parameters
    IntegerMatrix d2;         // rows a, c; columns e_a, e_c, e_ac
    std::vector<Integer> h2_generator;  // primitive, e_ac coefficient positive
    std::vector<Integer> phi{0, 0, 1};
    Integer pairing;
    bool matches_closed_form = false;  // (-k/p, -k/r, k/q), k = lcm(p,q,r)
    bool matches_literal_form = false;  // same with lcm(p,r) on the e_a, e_c entries
};

ChainData compute_chain_data(int p, int q, int r);

struct ShephardNormalForm {
    Index delta = 0;
    RingMatrix matrix;
    long long z = 0;           // central exponent (ambient units when transported)
    std::vector<int> section;  // Cayley letters of the section word
    std::string section_word() const;
};

struct OrderResult {
    enum class Kind { finite, infinite, exceeds_cutoff } kind = Kind::finite;
    long long order = 0;
    std::string reason;
};

class DihedralSession {
public:
    DihedralSession(int p, int q, int r, std::size_t budget = 1000000);

    const DihedralClassification& info() const { return info_; }
    bool infinite() const { return info_.regime != Regime::finite; }

    // Cayley letters of a word after transport; exponents reduced mod the letter order
    std::vector<int> letters(const SyllableWord& w) const;

    ShephardNormalForm normalize(const SyllableWord& w);
    bool is_trivial(const SyllableWord& w);
    bool are_equal(const SyllableWord& u, const SyllableWord& v);
    OrderResult element_order(const SyllableWord& w, long long cutoff = 1000);

    // central exponent of a word that is trivial in the triangle group
    FillResult fill_closed(const std::vector<int>& letters);

    CayleyStore& store();
    const FiniteShephardGroup& finite_group() const;

private:
    DihedralClassification info_;
    std::unique_ptr<CayleyStore> store_;
    std::unique_ptr<FiniteShephardGroup> finite_;
};

// ---------------------------------------------------------------- girth

struct GirthCertificate {
    int p = 0, q = 0, r = 0;
    int bound = 0;          // 2q
    int examined_through = 0;  // every length <= this was enumerated
    std::size_t raw_candidates = 0;
    std::size_t candidates = 0;  // after rotation / swap reduction
    std::vector<SyllableWord> trivial_below_bound;
    std::optional<int> minimal_trivial_length;
    std::optional<SyllableWord> minimal_trivial_witness;
    bool certified = false;
    bool interrupted = false;
};

// Exhaustive search over cyclically reduced words with exponents in
// [1, order - 1], up to max(2q - 1, max_syllables) syllables.  Continues past
// the bound only until a trivial word is found.
GirthCertificate certify_girth(int p, int q, int r, int max_syllables,
                               const std::atomic<bool>* interrupt = nullptr, std::size_t budget = 1000000);

// ---------------------------------------------------------------- homomorphisms

struct Presentation {
    std::vector<std::string> generators;
    std::vector<GroupWord> relators;
    std::vector<std::string> relator_names;
};

Presentation shephard_presentation(int p, int q, int r);  // generators s, t

using TrivialityOracle = std::function<bool(const GroupWord&)>;

struct RelatorVerdict {
    std::string name;
    std::string image;
    bool trivial = false;
};

struct HomomorphismReport {
    bool ok = false;
    std::vector<RelatorVerdict> relators;
};

GroupWord substitute(const GroupWord& w, const std::vector<GroupWord>& images);

HomomorphismReport verify_homomorphism(const Presentation& source, const std::vector<GroupWord>& images,
                                       const std::vector<std::string>& target_names,
                                       const TrivialityOracle& target);

// Sh(p,q,p) -> Sh(p,2q,2), sigma -> s, tau -> t s t
HomomorphismReport verify_odd_embedding(int p, int q);

// Elements of a Z-central extension of Delta(p,q,r) as pairs (Delta element,
// fiber integer), with per-face-type weights on the filling of each loop.
class CentralPairOracle {
public:
    struct Pair {
        Index delta = 0;
        long long fiber = 0;
        friend bool operator==(const Pair& a, const Pair& b) { return a.delta == b.delta && a.fiber == b.fiber; }
    };
    // generator g contributes letters[g] (Cayley letters) and central[g] fiber units
    CentralPairOracle(int p, int q, int r, std::vector<std::vector<int>> letters, std::vector<long long> central,
                      std::array<long long, 3> face_weight);

    Pair evaluate(const GroupWord& w);
    bool is_trivial(const GroupWord& w);

private:
    CayleyStore store_;
    std::vector<std::vector<int>> letters_;
    std::vector<long long> central_;
    std::array<long long, 3> weight_;  // P, R, Q
};

// G = <s, t, phi, u | s^p = t^r = e, (st)^q = (ts)^q = phi^{-qm}, phi central, u = (phi^m t s)^{-1}>
CentralPairOracle extended_shephard_oracle(int p, int q, int r);
// Delta~_k = <a~, b~, c~, z | a~^p = b~^q = c~^r = a~ b~ c~ = z^k, z central>
CentralPairOracle lifted_triangle_oracle(int p, int q, int r);

Presentation extended_shephard_presentation(int p, int q, int r);
Presentation lifted_triangle_presentation(int p, int q, int r);

struct LatticeMapsReport {
    int p = 0, q = 0, r = 0;
    long long k = 0, m = 0;
    HomomorphismReport phi_map;  // Delta~_k -> G
    HomomorphismReport psi_map;  // G -> Delta~_k
    bool psi_phi_identity = false;
    bool phi_psi_identity = false;
    bool ok() const { return phi_map.ok && psi_map.ok && psi_phi_identity && phi_psi_identity; }
};

// h < 1 triangle parameters (p, q, r); the Shephard group is Sh(p, 2q, r)
LatticeMapsReport verify_lattice_maps(int p, int q, int r);

// ---------------------------------------------------------------- independent oracle

// Equality decided without the Cayley store: closure matrices in the finite
// regime; otherwise a geometric model of the triangle group (exact affine for
// euclidean, 50-digit hyperboloid for hyperbolic) and the signed-area cocycle
// to recover the central exponent.
class GeometricOracle {
public:
    GeometricOracle(int p, int q, int r);
    ~GeometricOracle();
    GeometricOracle(GeometricOracle&&) noexcept;
    GeometricOracle& operator=(GeometricOracle&&) noexcept;

    bool is_trivial(const SyllableWord& w);
    bool are_equal(const SyllableWord& u, const SyllableWord& v) { return is_trivial(u * v.inverse()); }
    // central exponent of a word trivial in the triangle group, ambient units
    long long central_exponent(const SyllableWord& w);

    struct Model;

private:
    std::unique_ptr<Model> model_;
};

bool brute_force_equal(int p, int q, int r, const SyllableWord& u, const SyllableWord& v);

}  // namespace shephard
