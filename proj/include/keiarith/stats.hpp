#pragma once

#include <functional>
#include <string>
#include <vector>

#include "keiarith/invariants.hpp"

namespace keiarith {

/*
 * Summatory statistics of the coloring invariants over s-coprime squarefree
 * integers, numeric targets from Euler products, and the auxiliary
 * character-sum and divisor-sum estimates backing them.
 *
 * Conventions: N(X) is the exact sum of col over squarefree n ≤ X coprime to
 * s; E(X) = N(X) / #{such n} (an exact rational, kept as the integer pair);
 * β is the degree of the braid-average polynomial of the expression; reports
 * normalize E by (γ_s log X)^β with γ_s = ζ(2)^{-1} Π_{p|s} (1+1/p)^{-1}.
 */

struct StatsOptions {
    long long sieve_budget = 50'000'000;
    ClassGroupOptions cg;
    ClassGroupCache* cache = nullptr;   // used and filled by the R3 family
    long long euler_truncation = 1'000'000;
    long long piltz_budget = 200'000'000;
};

// γ_s: density of s-coprime squarefree integers.
double gamma_s(long long s);

struct SummatoryPoint {
    long long X = 0;
    long long N = 0;         // exact
    long long sq_count = 0;  // exact; E = N / sq_count
    double ratio = 0.0;      // E / (γ_s log X)^β
    long long h3_sum = -1;   // single-R3 family only: Σ h3(Disc(L_n)) over 1 < n ≤ X
};

struct SummatoryReport {
    std::string kei;
    long long s = 1;
    int beta = 0;
    double gamma = 0.0;
    std::vector<SummatoryPoint> points;
};

SummatoryReport summatory(const KeiExpr& expr, long long s, std::vector<long long> grid,
                          const StatsOptions& opts = {});

struct CsTarget {
    bool known = false;
    double value = 0.0;
    double lower = 0.0, upper = 0.0;  // truncation bracket for the Euler product
};

// Closed-form constant c_s for the supported families:
//   T(a), a ≥ 1:    1/(a-1)! · Π_{p∤s} (1 + a/p)/(1 + 1/p)^a
//   J + T(a):       2 · c_s(T(a+2))
//   R3:             5 (exact)
// Anything else reports unknown.
CsTarget c_s_target(const KeiExpr& expr, long long s, long long euler_truncation = 1'000'000);

struct VerifyReport {
    SummatoryReport base;
    bool target_known = false;
    double c_target = 0.0;
    // β ≥ 1: least-squares slope of N/X against log^β X, compared with
    // γ^{1+β}·c_s. β = 0: E at the largest X, compared with c_s.
    double fitted = 0.0;
    double fitted_target = 0.0;
    double tolerance = 0.0;
    std::string verdict;  // "pass" | "fail" | "inconclusive"
};

VerifyReport verify_generic_type(const KeiExpr& expr, long long s, std::vector<long long> grid,
                                 const StatsOptions& opts = {});

// T_v(Y) = Σ_{a,b ≥ 2, ab ≤ Y} μ_v²(ab) (b/a). The sieve must cover Y.
long long char_sum_T(long long v, long long Y, const SieveTables& sieve);

struct CharsumPoint {
    long long X = 0;
    long long T = 0;
    double ratio = 0.0;  // |T| / (2^{ω(s)/2} X^{7/8} (1 + log X)^{1/2})
};

std::vector<CharsumPoint> bicharacter_sum_T(long long s, std::vector<long long> grid,
                                            const StatsOptions& opts = {});

struct PiltzResult {
    long long sum = 0;       // exact Σ_{n≤X} d_a(n)
    double main_term = 0.0;  // X log^{a-1}(X) / (a-1)!
    double ratio = 0.0;
};

// Exact Piltz divisor sums for a ≤ 4 via floor-sum recursion.
PiltzResult piltz_sum(int a, long long X, const StatsOptions& opts = {});

struct EulerProductSpec {
    // Σ_ν f(p^ν) / p^ν at the prime p; must be positive for convergence.
    std::function<double(long long p)> local_sum;
    // |log M_p| ≤ tail_constant / p² for p beyond the truncation.
    double tail_constant = 1.0;
};

struct MertensResult {
    double value = 0.0;
    double lower = 0.0, upper = 0.0;  // monotone tail bracket
};

// Truncated M^{(a)}(f) = Π_p (1-1/p)^a Σ_ν f(p^ν)/p^ν, primes p ≤ P.
MertensResult mertens_product(const EulerProductSpec& spec, int a, long long P);

// Degree of the braid-average polynomial of the realized expression.
int summatory_beta(const KeiExpr& expr);

}  // namespace keiarith
