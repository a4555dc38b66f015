#pragma once

#include <cstdint>
#include <vector>

#include "keiarith/errors.hpp"

namespace keiarith {

// Number-theoretic substrate: squarefree/μ/ω/smallest-prime-factor tables,
// Kronecker symbols, sign-adjusted squarefree integers n* and the fundamental
// discriminant attached to a squarefree n.

struct SieveTables {
    long long limit = 0;
    std::vector<uint8_t> squarefree_bits;  // bit n of squarefree_bits[n/8]
    std::vector<uint8_t> omega;            // number of distinct prime factors
    std::vector<int8_t> mu;                // Möbius function
    std::vector<uint32_t> spf;             // smallest prime factor, spf[1] = 1

    bool squarefree(long long n) const {
        return (squarefree_bits[static_cast<size_t>(n >> 3)] >> (n & 7)) & 1;
    }
    int omega_of(long long n) const { return omega[static_cast<size_t>(n)]; }
    int mu_of(long long n) const { return mu[static_cast<size_t>(n)]; }
    long long smallest_prime_factor(long long n) const { return spf[static_cast<size_t>(n)]; }

    // Distinct prime factors of n <= limit, increasing.
    std::vector<long long> prime_factors(long long n) const;
};

// Tables correct for all n <= limit. Memory is about 6 bytes per n.
SieveTables build_sieve(long long limit, long long budget = 50'000'000);

bool is_squarefree_u64(long long n);                       // trial division
std::vector<long long> factor_u64(long long n);            // distinct primes, trial division

// n* = (-1)^((m-1)/2) * n for n = 2^k m, m odd. Multiplicative in coprime
// arguments; Q(sqrt(n*)) is ramified exactly at n. Rejects non-squarefree n.
long long n_star(long long n);

// Kronecker symbol (b / a) for a >= 1: completely multiplicative extension of
// the Legendre symbol, with (b / 2) = 0 for even b and (-1)^((b^2-1)/8) for
// odd b, and (b / 1) = 1.
int kronecker(long long b, long long a);

// Discriminant of the quadratic field ramified exactly at n: n* for odd n,
// 4 n* for even n. Requires n > 1 squarefree.
long long fundamental_discriminant(long long n);

bool is_fundamental_discriminant(long long d);

}  // namespace keiarith
