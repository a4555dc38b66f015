#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "keiarith/errors.hpp"

namespace keiarith {

/*
 * A kei (involutory quandle) is a set with a binary operator x ▷ y obeying
 *
 *   K1:  x ▷ x = x
 *   K2:  x ▷ (x ▷ y) = y
 *   K3:  x ▷ (y ▷ z) = (x ▷ y) ▷ (x ▷ z)
 *
 * Finite keis are stored as dense m×m operation tables over indices [0, m).
 * All instances here are tiny, so the O(m³) axiom scan is the right tool.
 */

// A bijection of [0, m), stored by images.
struct Permutation {
    std::vector<int> image;

    Permutation() = default;
    explicit Permutation(std::vector<int> img);

    static Permutation identity(int m);
    int degree() const { return static_cast<int>(image.size()); }
    int operator()(int x) const { return image[static_cast<size_t>(x)]; }
    bool is_identity() const;

    // (a.then(b))(x) = b(a(x))
    Permutation then(const Permutation& next) const;
    Permutation inverse() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation& lhs, const Permutation& rhs) {
        return lhs.image <=> rhs.image;
    }
};

// A permutation group given by generators, with the full element list
// computed by closure. Only sensible for the small groups arising here.
struct PermGroup {
    std::vector<Permutation> generators;
    std::vector<Permutation> elements;  // sorted, closed under composition and inverse

    static PermGroup generated_by(std::vector<Permutation> gens, int degree);
    size_t order() const { return elements.size(); }
    bool contains(const Permutation& p) const;
};

struct AxiomViolation {
    int axiom;                    // 1, 2 or 3
    std::array<int, 3> witness;   // (x, y, z); unused slots are -1
};

class KeiTable {
  public:
    KeiTable() = default;  // the empty kei

    // Validates shape and that the entries are in range; does not check the
    // axioms (see axiom_violations / is_kei).
    KeiTable(int size, std::vector<int> op);

    static KeiTable trivial(int a);     // x ▷ y = y on a elements
    static KeiTable joyce();            // {x+, x-, y}: only φ_y is nontrivial, swapping x±
    static KeiTable dihedral(int m);    // reflections under conjugation: x ▷ y = 2x - y mod m, m odd ≥ 3

    int size() const { return size_; }
    bool empty() const { return size_ == 0; }
    int apply(int x, int y) const { return op_[static_cast<size_t>(x) * size_ + y]; }  // x ▷ y

    // Left translation φ_x = (y ↦ x ▷ y).
    Permutation translation(int x) const;

    std::vector<AxiomViolation> axiom_violations(size_t max_reports = 16) const;
    bool is_kei() const { return axiom_violations(1).empty(); }

    const std::vector<int>& flat() const { return op_; }

    // Canonical JSON dump: {"size": m, "op": [[...], ...]}.
    std::string to_json() const;
    static KeiTable from_json(std::string_view text);

    friend bool operator==(const KeiTable&, const KeiTable&) = default;

  private:
    int size_ = 0;
    std::vector<int> op_;  // row x holds φ_x
};

// Validates an untrusted table: throws std::invalid_argument if malformed
// (wrong shape / out-of-range entry), otherwise returns the axiom violations
// (empty result means the table is a kei).
std::vector<AxiomViolation> check_kei_axioms(int size, const std::vector<std::vector<int>>& op,
                                             size_t max_reports = 16);

// Block table: within-block products per operand, cross-block x ▷ y = y.
KeiTable disjoint_union(const KeiTable& k1, const KeiTable& k2);

// Brute-force isomorphism over permutations of [0, m); guarded to m ≤ 8.
bool is_isomorphic(const KeiTable& k1, const KeiTable& k2);

// Inn(k): the group generated by the left translations φ_x.
PermGroup inner_group(const KeiTable& k);

// Orbit partition of [0, m) under Inn(k); orbits and their members sorted.
std::vector<std::vector<int>> orbits(const KeiTable& k);

// All ▷-closed subsets, including ∅ and the whole set, sorted by (size, lex).
// Exhaustive subset scan; guarded to m ≤ 16.
std::vector<std::vector<int>> sub_keis(const KeiTable& k);

// -1 + max over sub-keis k' of the number of Inn(k')-orbits on k'.
// This equals the degree of the braid-average polynomial of k.
int hilbert_degree(const KeiTable& k);

// Number of kei morphisms src → dst, by backtracking over partial maps.
// Requires src.size() ≤ 8 or dst^src within the budget.
long long hom_count(const KeiTable& src, const KeiTable& dst, long long budget = 10'000'000);

// All keis on m elements up to isomorphism (exhaustive; m ≤ 4).
std::vector<KeiTable> enumerate_keis(int m);

/*
 * Symbolic kei expressions: disjoint unions of the atoms T(a), J, R3 and
 * R(m). Text grammar (used CLI-wide):
 *
 *   atom := "T(" digits ")" | "J" | "R3" | "R(" odd digits ")"
 *   expr := atom { "+" atom }
 *
 * "+" denotes disjoint union. R(3) is normalized to R3.
 */
struct KeiExpr {
    enum class AtomKind { trivial, joyce, dihedral };
    struct Atom {
        AtomKind kind;
        int param;  // size for trivial, modulus for dihedral, unused for joyce
        friend bool operator==(const Atom&, const Atom&) = default;
    };

    std::vector<Atom> atoms;

    static KeiExpr parse(std::string_view text);  // throws std::invalid_argument
    std::string str() const;
    KeiTable realize() const;
    int realized_size() const;

    friend bool operator==(const KeiExpr&, const KeiExpr&) = default;
};

}  // namespace keiarith
