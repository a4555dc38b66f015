#include "keiarith/invariants.hpp"

#include <limits>
#include <stdexcept>

namespace keiarith {

namespace {

long long checked_pow(long long base, int exp) {
    long long out = 1;
    for (int i = 0; i < exp; ++i) {
        __int128 next = static_cast<__int128>(out) * base;
        if (next > std::numeric_limits<long long>::max()) throw std::overflow_error("coloring count overflow");
        out = static_cast<long long>(next);
    }
    return out;
}

long long checked_add(long long a, long long b) {
    long long out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("coloring count overflow");
    return out;
}

long long checked_mul(long long a, long long b) {
    long long out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("coloring count overflow");
    return out;
}

}  // namespace

ExprFamily classify_expr(const KeiExpr& expr) {
    ExprFamily fam;
    for (const auto& atom : expr.atoms) {
        switch (atom.kind) {
            case KeiExpr::AtomKind::trivial: fam.trivial_total += atom.param; break;
            case KeiExpr::AtomKind::joyce: ++fam.joyce; break;
            case KeiExpr::AtomKind::dihedral:
                if (atom.param == 3)
                    ++fam.r3;
                else
                    ++fam.other;
                break;
        }
    }
    return fam;
}

ColoringEvaluator::ColoringEvaluator(const SieveTables* sieve, ClassGroupCache* cache,
                                     ClassGroupOptions cg_opts)
    : sieve_(sieve), cache_(cache), cg_opts_(cg_opts) {}

std::vector<long long> ColoringEvaluator::primes_of(long long n) const {
    if (n < 1) throw std::invalid_argument("coloring invariants need n >= 1");
    if (sieve_ && n <= sieve_->limit) {
        if (!sieve_->squarefree(n)) throw std::invalid_argument("n must be squarefree");
        return sieve_->prime_factors(n);
    }
    if (!is_squarefree_u64(n)) throw std::invalid_argument("n must be squarefree");
    return factor_u64(n);
}

long long ColoringEvaluator::col_trivial(long long a, long long n) const {
    if (a < 0) throw std::invalid_argument("trivial kei size must be >= 0");
    int om = static_cast<int>(primes_of(n).size());
    return checked_pow(a, om);  // 0^0 = 1 covers n = 1 on the empty kei
}

long long ColoringEvaluator::col_joyce(long long n) const {
    const std::vector<long long> primes = primes_of(n);
    long long total = 0;
    // each prime joins the a-part, the b-part, or neither
    auto rec = [&](auto&& self, size_t i, long long a, long long b) -> void {
        if (i == primes.size()) {
            total = checked_add(total, kronecker(b, a));
            return;
        }
        self(self, i + 1, a, b);
        self(self, i + 1, a * primes[i], b);
        self(self, i + 1, a, b * primes[i]);
    };
    rec(rec, 0, 1, 1);
    return total;
}

long long ColoringEvaluator::col_joyce_trivial(long long t, long long n) const {
    if (t < 0) throw std::invalid_argument("trivial kei size must be >= 0");
    const std::vector<long long> primes = primes_of(n);
    long long total = 0;
    // ordered triples (a, b, c) with abc = n; weight (t+1)^ω(c) (b/a)
    auto rec = [&](auto&& self, size_t i, long long a, long long b, int c_primes) -> void {
        if (i == primes.size()) {
            total = checked_add(total, checked_pow(t + 1, c_primes) * kronecker(b, a));
            return;
        }
        self(self, i + 1, a * primes[i], b, c_primes);
        self(self, i + 1, a, b * primes[i], c_primes);
        self(self, i + 1, a, b, c_primes + 1);
    };
    rec(rec, 0, 1, 1, 0);
    return total;
}

long long ColoringEvaluator::three_torsion_of_disc(long long disc) const {
    long long h, t3;
    if (cache_ && cache_->lookup(disc, &h, &t3)) return t3;
    FormClassGroup cl = class_group(disc, cg_opts_, sieve_);
    if (cache_) cache_->store(disc, cl.h(), cl.three_torsion);
    return cl.three_torsion;
}

long long ColoringEvaluator::col_r3(long long n) const {
    primes_of(n);  // validates squarefree n >= 1
    if (n == 1) return 1;
    return 3 * three_torsion_of_disc(fundamental_discriminant(n));
}

long long ColoringEvaluator::col(const KeiExpr& expr, long long n) const {
    const ExprFamily fam = classify_expr(expr);
    if (fam.other > 0)
        throw unsupported_kei_error("no closed coloring formula for " + expr.str());
    const std::vector<long long> primes = primes_of(n);
    const size_t np = primes.size();

    auto col_atom = [&](const KeiExpr::Atom& atom, long long m) -> long long {
        switch (atom.kind) {
            case KeiExpr::AtomKind::trivial: return col_trivial(atom.param, m);
            case KeiExpr::AtomKind::joyce: return col_joyce(m);
            case KeiExpr::AtomKind::dihedral: return col_r3(m);
        }
        return 0;
    };

    if (expr.atoms.empty()) return n == 1 ? 1 : 0;  // empty kei

    // convolution over ordered factorizations: assign the primes in `mask`
    // to the atoms from index i on
    auto rec = [&](auto&& self, size_t i, uint32_t mask) -> long long {
        auto value_of = [&](uint32_t bits) {
            long long m = 1;
            for (size_t j = 0; j < np; ++j)
                if (bits >> j & 1) m *= primes[j];
            return m;
        };
        if (i + 1 == expr.atoms.size()) return col_atom(expr.atoms[i], value_of(mask));
        long long total = 0;
        uint32_t sub = mask;
        while (true) {
            long long here = col_atom(expr.atoms[i], value_of(sub));
            if (here != 0)
                total = checked_add(total, checked_mul(here, self(self, i + 1, mask & ~sub)));
            if (sub == 0) break;
            sub = (sub - 1) & mask;
        }
        return total;
    };
    if (np > 25) throw budget_error("too many prime factors for convolution");
    return rec(rec, 0, (np == 0) ? 0u : ((1u << np) - 1));
}

}  // namespace keiarith
