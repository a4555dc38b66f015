#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "keiarith/arith.hpp"
#include "keiarith/errors.hpp"

namespace keiarith {

/*
 * Class groups of quadratic discriminants via binary quadratic forms
 * ax² + bxy + cy², integer arithmetic only.
 *
 * For Δ < 0 every class holds a unique reduced form (|b| ≤ a ≤ c with b ≥ 0
 * on the boundary). For Δ > 0 the reduced forms of a class form a cycle under
 * the ρ-operator, and classes are cycles; this realizes the narrow class
 * group. The 3-torsion of narrow and wide class groups coincide (the kernel
 * of Cl⁺ → Cl is a 2-group), so three_torsion also computes |Cl ⊗ F₃| of the
 * wide group.
 */

struct QuadForm {
    long long a = 0, b = 0, c = 0;

    long long disc() const;  // b² - 4ac, checked against overflow
    bool primitive() const;  // gcd(a, b, c) = 1

    friend bool operator==(const QuadForm&, const QuadForm&) = default;
    friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

// Unique reduced representative (Δ < 0, requires a > 0) or a reduced member
// of the class's cycle (Δ > 0). Rejects square and zero discriminants.
QuadForm reduce_form(const QuadForm& f);

bool is_reduced(const QuadForm& f);

// ρ-step on a reduced indefinite form: the next form of its cycle.
QuadForm rho_step(const QuadForm& f);

// Gauss composition: a reduced primitive form of the same discriminant
// representing the product class (narrow class group law for Δ > 0).
QuadForm compose(const QuadForm& f, const QuadForm& g);

// Same class: reduced equality for Δ < 0, cycle membership for Δ > 0.
bool equivalent(const QuadForm& f, const QuadForm& g);

QuadForm principal_form(long long disc);

struct ClassGroupOptions {
    long long disc_budget = 20'000'000;   // |Δ| cap
    bool allow_nonfundamental = false;    // wanted for browsing only; h3 needs fundamental Δ
};

struct FormClassGroup {
    long long disc = 0;
    bool fundamental = false;
    std::vector<QuadForm> reps;                  // one representative per class, sorted
    std::vector<std::vector<QuadForm>> cycles;   // Δ > 0: full reduced cycle per class
    size_t principal_index = 0;
    long long three_torsion = 1;                 // |Cl(Δ)[3]|, a power of 3

    long long h() const { return static_cast<long long>(reps.size()); }
};

// Enumerates every class of the given discriminant. The optional sieve must
// have spf coverage up to (|Δ|+3)/4 to be used; otherwise a local table is
// built.
FormClassGroup class_group(long long disc, const ClassGroupOptions& opts = {},
                           const SieveTables* sieve = nullptr);

long long three_torsion_count(long long disc, const ClassGroupOptions& opts = {},
                              const SieveTables* sieve = nullptr);

// Number of cubic fields (equivalently maximal cubic orders) of discriminant
// Δ: (|Cl(Δ)[3]| - 1)/2. Defined for fundamental Δ only.
long long h3(long long disc, const ClassGroupOptions& opts = {},
             const SieveTables* sieve = nullptr);

// On-disk cache of (disc, h, |Cl[3]|) triples, CSV rows "disc,h,t3".
class ClassGroupCache {
  public:
    static ClassGroupCache load(const std::string& path);  // missing file -> empty cache
    bool lookup(long long disc, long long* h, long long* t3) const;
    void store(long long disc, long long h, long long t3);
    void save(const std::string& path) const;  // rows sorted by disc
    size_t size() const { return map_.size(); }

  private:
    std::unordered_map<long long, std::pair<long long, long long>> map_;
};

}  // namespace keiarith
