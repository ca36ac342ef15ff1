#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "demazure/intlinalg.hpp"

namespace demazure {

using Weight = std::vector<int64_t>;

enum class LatticeKind { Adjoint, SimplyConnected, Intermediate };

struct RootDatumSpec {
    // Irreducible components in order, e.g. {('A',1), ('B',2)} for "A1xB2".
    std::vector<std::pair<char, int>> components;
    LatticeKind lattice = LatticeKind::SimplyConnected;
    // For Intermediate: rows are basis vectors in fundamental weight coordinates.
    std::vector<std::vector<int64_t>> basis;

    // "G2", "A1xB2"; lattice "sc", "adj".
    static RootDatumSpec parse(const std::string& type, const std::string& lattice);
    std::string type_name() const;
    std::string lattice_name() const;
};

struct Root {
    int index = 0;
    bool positive = true;
    int height = 0;
    int simple = -1;             // simple root index, or -1
    Weight root_coords;          // in simple roots
    Weight weight_coords;        // in fundamental weights
    Weight lattice_coords;       // in the chosen lattice basis
    Weight coroot_coords;        // in simple coroots
};

// A semisimple root datum with a lattice between the root and weight lattices.
// Cartan convention: a_ij = alpha_i^vee(alpha_j); numbering as in Bourbaki
// (B_n: alpha_n short; C_n: alpha_n long; G2: alpha_1 short).
class RootDatum {
public:
    static std::shared_ptr<const RootDatum> build(const RootDatumSpec& spec);

    const RootDatumSpec& spec() const { return spec_; }
    int rank() const { return rank_; }
    const IntMatrix& cartan() const { return cartan_; }
    // Rows: lattice basis in fundamental weight coordinates.
    const IntMatrix& basis() const { return basis_; }
    const std::vector<Root>& roots() const { return roots_; }
    int num_positive() const { return npos_; }
    const Root& root(int i) const { return roots_[static_cast<std::size_t>(i)]; }
    int simple_root(int i) const { return simple_[static_cast<std::size_t>(i)]; }
    int negative_of(int root) const { return root < npos_ ? root + npos_ : root - npos_; }
    // Root index for lattice coordinates, or -1.
    int find_root(const Weight& lattice_coords) const;

    // alpha^vee(lambda) for lambda in lattice coordinates.
    int64_t pairing(int root, const Weight& lambda) const;
    Weight to_weight_coords(const Weight& lambda) const;
    // Lattice coordinates of a weight; nullopt when it is not in the lattice.
    std::optional<Weight> from_weight_coords(const Weight& w) const;
    // Matrix of s_alpha on lattice coordinates (column vectors).
    IntMatrix reflection_action(int root) const;
    Weight reflect(int root, const Weight& lambda) const;

    // Fundamental weights that lie in the lattice, in lattice coordinates.
    std::optional<Weight> fundamental_weight(int i) const;

    Int cartan_determinant() const;

private:
    RootDatumSpec spec_;
    int rank_ = 0;
    IntMatrix cartan_;
    IntMatrix basis_;
    std::vector<int64_t> sym_;  // symmetrizer d_i = (alpha_i, alpha_i)
    std::vector<Root> roots_;
    int npos_ = 0;
    std::vector<int> simple_;
    std::map<Weight, int> by_lattice_;
};

using DatumPtr = std::shared_ptr<const RootDatum>;

// Cartan matrix of an irreducible type.
IntMatrix cartan_matrix(char type, int rank);
// Determinants and simply connected torsion primes of the irreducible types.
Int expected_cartan_determinant(char type, int rank);
std::vector<int> torsion_primes(char type, int rank);

// Weyl group elements are indexed 0..size()-1 in (length, canonical word)
// order, so 0 is the identity and size()-1 the longest element.
class WeylGroup {
public:
    static std::shared_ptr<const WeylGroup> enumerate(DatumPtr datum, std::size_t cap = 1200);

    const RootDatum& datum() const { return *datum_; }
    DatumPtr datum_ptr() const { return datum_; }
    int size() const { return static_cast<int>(length_.size()); }
    int identity() const { return 0; }
    int longest() const { return size() - 1; }
    int length(int w) const { return length_[static_cast<std::size_t>(w)]; }
    // Canonical reduced word with 0-based letters: the smallest left descent
    // first, then the word of s_i w.
    const std::vector<int>& word(int w) const { return words_[static_cast<std::size_t>(w)]; }
    std::string word_string(int w) const;  // 1-based, e.g. "1,2,1"; "e" for identity
    const IntMatrix& matrix(int w) const { return matrices_[static_cast<std::size_t>(w)]; }
    // Index of w(alpha) for a root index alpha.
    int act_on_root(int w, int root) const { return perms_[static_cast<std::size_t>(w)][static_cast<std::size_t>(root)]; }
    Weight act(int w, const Weight& lambda) const;

    int multiply(int u, int v) const;
    int inverse(int w) const { return inverse_[static_cast<std::size_t>(w)]; }
    int simple_reflection(int i) const { return simple_refl_[static_cast<std::size_t>(i)]; }
    int reflection(int root) const;
    bool is_left_descent(int w, int i) const;
    bool is_right_descent(int w, int i) const;

    int word_to_element(const std::vector<int>& word) const;
    bool is_reduced(const std::vector<int>& word) const;
    // v(Sigma_-) cap Sigma_+ as positive root indices, ascending.
    std::vector<int> inversion_set(int v) const;
    bool bruhat_leq(int u, int v) const { return bruhat_[static_cast<std::size_t>(u) * static_cast<std::size_t>(size()) + static_cast<std::size_t>(v)] != 0; }
    // Subword criterion, exponential; test oracle.
    bool bruhat_leq_subword(int u, int v) const;

    // Element with the given 1-based word string ("e", "1,2,1").
    std::optional<int> parse_word(const std::string& text) const;

private:
    DatumPtr datum_;
    std::vector<IntMatrix> matrices_;
    std::vector<std::vector<int>> perms_;
    std::vector<int> length_;
    std::vector<std::vector<int>> words_;
    std::vector<int> inverse_;
    std::vector<int> simple_refl_;
    std::map<std::vector<int>, int> by_key_;  // images of simple roots
    std::vector<uint8_t> bruhat_;

    int lookup(const std::vector<int>& perm) const;
};

using WeylPtr = std::shared_ptr<const WeylGroup>;

}  // namespace demazure

namespace demazure {
// "1,2,1" or "121" or "e"/"" -> 0-based letters; throws Error(InvalidWord).
std::vector<int> parse_word_sequence(const std::string& text, int rank);
std::string word_to_string(const std::vector<int>& word);
}  // namespace demazure
