#pragma once

#include <vector>

#include "keiarith/arith.hpp"
#include "keiarith/forms.hpp"
#include "keiarith/kei.hpp"

namespace keiarith {

/*
 * Coloring invariants col_k(n) of squarefree integers for the kei families
 * with known closed forms:
 *
 *   col_{T(a)}(n)   = a^ω(n)
 *   col_J(n)        = Σ_{ab|n} (b/a)                 (Kronecker symbols)
 *   col_{T(a)+J}(n) = Σ_{abc=n} (a+1)^ω(c) (b/a)
 *   col_{R3}(n)     = 1 for n = 1, else 3·|Cl(Δ_n)[3]| = 3 + 6·h3(Δ_n)
 *
 * and, for disjoint unions, the Dirichlet-style convolution over ordered
 * factorizations n = n1·n2. Expressions containing any other atom (e.g. R(5))
 * are rejected with unsupported_kei_error, never given a wrong number.
 */

// Decomposition of an expression into the supported atom counts.
struct ExprFamily {
    long long trivial_total = 0;  // summed sizes of T(a) atoms
    int joyce = 0;
    int r3 = 0;
    int other = 0;  // atoms outside {T, J, R3}
};
ExprFamily classify_expr(const KeiExpr& expr);

class ColoringEvaluator {
  public:
    // Both pointers are optional; the sieve speeds up factorization when it
    // covers n, and the cache amortizes class-group work for col_r3.
    // Not safe for concurrent use when a cache is attached.
    explicit ColoringEvaluator(const SieveTables* sieve = nullptr, ClassGroupCache* cache = nullptr,
                               ClassGroupOptions cg_opts = {});

    long long col_trivial(long long a, long long n) const;
    long long col_joyce(long long n) const;
    long long col_joyce_trivial(long long a, long long n) const;  // T(a) ⊔ J
    long long col_r3(long long n) const;
    long long col(const KeiExpr& expr, long long n) const;

    // Distinct primes of n; throws std::invalid_argument unless n is
    // squarefree and positive.
    std::vector<long long> primes_of(long long n) const;

    long long three_torsion_of_disc(long long disc) const;  // cache-aware

  private:
    const SieveTables* sieve_;
    ClassGroupCache* cache_;
    ClassGroupOptions cg_opts_;
};

}  // namespace keiarith
