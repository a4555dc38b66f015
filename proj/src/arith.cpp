#include "keiarith/arith.hpp"

#include <stdexcept>

namespace keiarith {

std::vector<long long> SieveTables::prime_factors(long long n) const {
    std::vector<long long> out;
    while (n > 1) {
        long long p = spf[static_cast<size_t>(n)];
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    return out;
}

SieveTables build_sieve(long long limit, long long budget) {
    if (limit < 1) throw std::invalid_argument("sieve limit must be >= 1");
    if (limit > budget) throw budget_error("sieve limit exceeds memory budget");
    SieveTables t;
    t.limit = limit;
    const size_t n = static_cast<size_t>(limit) + 1;
    t.spf.assign(n, 0);
    t.omega.assign(n, 0);
    t.mu.assign(n, 0);
    t.squarefree_bits.assign((n >> 3) + 1, 0);
    t.spf[1] = 1;
    t.mu[1] = 1;

    for (size_t i = 2; i < n; ++i) {
        if (t.spf[i] == 0) {
            for (size_t j = i; j < n; j += i)
                if (t.spf[j] == 0) t.spf[j] = static_cast<uint32_t>(i);
        }
    }
    // mu, omega and the squarefree bit from the factorization step n -> n/spf.
    for (size_t i = 2; i < n; ++i) {
        size_t p = t.spf[i];
        size_t rest = i / p;
        if (rest % p == 0) {
            t.mu[i] = 0;
            t.omega[i] = static_cast<uint8_t>(t.omega[rest]);  // ω still counts distinct primes
        } else {
            t.mu[i] = static_cast<int8_t>(-t.mu[rest]);
            t.omega[i] = static_cast<uint8_t>(t.omega[rest] + 1);
        }
    }
    t.squarefree_bits[0] |= 1 << 1;  // n = 1
    for (size_t i = 2; i < n; ++i)
        if (t.mu[i] != 0) t.squarefree_bits[i >> 3] |= static_cast<uint8_t>(1u << (i & 7));
    return t;
}

bool is_squarefree_u64(long long n) {
    if (n < 1) return false;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

std::vector<long long> factor_u64(long long n) {
    std::vector<long long> out;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

long long n_star(long long n) {
    if (n < 1 || !is_squarefree_u64(n)) throw std::invalid_argument("n_star needs squarefree n >= 1");
    long long m = n;
    while (m % 2 == 0) m /= 2;
    return ((m - 1) / 2) % 2 == 0 ? n : -n;
}

int kronecker(long long b, long long a) {
    if (a < 1) throw std::invalid_argument("kronecker denominator must be >= 1");
    int result = 1;
    // factor the 2-part of the denominator: (b/2) = 0, (-1)^((b^2-1)/8)
    while (a % 2 == 0) {
        a /= 2;
        if (b % 2 == 0) return 0;
        long long r = ((b % 8) + 8) % 8;
        if (r == 3 || r == 5) result = -result;
    }
    if (a == 1) return result;
    // Jacobi symbol by reciprocity on the odd part.
    b %= a;
    if (b < 0) b += a;
    while (b != 0) {
        while (b % 2 == 0) {
            b /= 2;
            long long r = a % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, b);
        if (a % 4 == 3 && b % 4 == 3) result = -result;
        b %= a;
    }
    return a == 1 ? result : 0;
}

long long fundamental_discriminant(long long n) {
    if (n <= 1) throw std::invalid_argument("fundamental_discriminant needs n > 1");
    long long star = n_star(n);  // rejects non-squarefree n
    return n % 2 == 1 ? star : 4 * star;
}

bool is_fundamental_discriminant(long long d) {
    if (d == 0 || d == 1) return false;
    long long r = ((d % 4) + 4) % 4;
    if (r == 1) return is_squarefree_u64(d < 0 ? -d : d);
    if (r != 0) return false;
    long long m = d / 4;
    long long rm = ((m % 4) + 4) % 4;
    if (rm != 2 && rm != 3) return false;
    return is_squarefree_u64(m < 0 ? -m : m);
}

}  // namespace keiarith
