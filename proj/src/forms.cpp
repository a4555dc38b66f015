#include "keiarith/forms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace keiarith {

namespace {

using i128 = __int128;

long long isqrt_ll(long long n) {
    if (n < 0) return -1;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square_ll(long long n) {
    if (n < 0) return false;
    long long r = isqrt_ll(n);
    return r * r == n;
}

struct Form128 {
    i128 a, b, c;
};

i128 disc128(const Form128& f) { return f.b * f.b - 4 * f.a * f.c; }

long long to_ll(i128 v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error("form coefficient exceeds 64 bits");
    return static_cast<long long>(v);
}

i128 floordiv(i128 num, i128 den) {
    i128 q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
    return q;
}

// --- reduction, definite case (Δ < 0, a > 0) ---

Form128 reduce_definite(Form128 f) {
    if (f.a <= 0) throw std::invalid_argument("definite form must have a > 0");
    while (true) {
        // normalize b into (-a, a]
        if (f.b > f.a || f.b <= -f.a) {
            i128 t = floordiv(f.a - f.b, 2 * f.a);
            f.c += t * (f.b + t * f.a);
            f.b += 2 * t * f.a;
        }
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        break;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
}

// --- reduction, indefinite case (Δ > 0, nonsquare) ---

bool reduced_indefinite(const Form128& f, long long r) {
    i128 absa = f.a < 0 ? -f.a : f.a;
    return f.b >= 1 && f.b <= r && 2 * absa >= r + 1 - f.b && 2 * absa <= r + f.b;
}

Form128 rho_indefinite(Form128 f, long long r) {
    i128 absc = f.c < 0 ? -f.c : f.c;
    i128 bnew;
    if (absc > r) {
        // shrink phase: minimal absolute residue of -b mod 2|c|
        bnew = -f.b - 2 * absc * floordiv(-f.b + absc, 2 * absc);
    } else {
        bnew = r - ((r + f.b) % (2 * absc) + 2 * absc) % (2 * absc);
    }
    i128 cnew = (bnew * bnew - disc128(f)) / (4 * f.c);
    return {f.c, bnew, cnew};
}

Form128 reduce_indefinite(Form128 f, long long r) {
    for (int iter = 0; iter < 20000; ++iter) {
        if (reduced_indefinite(f, r)) return f;
        f = rho_indefinite(f, r);
    }
    throw std::logic_error("indefinite reduction did not terminate");
}

Form128 reduce128(Form128 f) {
    i128 d = disc128(f);
    if (d == 0) throw std::invalid_argument("zero discriminant");
    if (d < 0) return reduce_definite(f);
    long long dl = to_ll(d);
    if (is_square_ll(dl)) throw std::invalid_argument("square discriminant");
    return reduce_indefinite(f, isqrt_ll(dl));
}

// --- composition helpers ---

// xgcd: returns g and finds (x, y) with a x + b y = g
long long xgcd(long long a, long long b, long long* x, long long* y) {
    long long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        long long q = a / b;
        std::tie(a, b) = std::make_tuple(b, a - q * b);
        std::tie(x0, x1) = std::make_tuple(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_tuple(y1, y0 - q * y1);
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    *x = x0;
    *y = y0;
    return a;
}

i128 eval_form(const QuadForm& f, i128 x, i128 y) {
    return f.a * x * x + f.b * x * y + f.c * y * y;
}

// SL2-transform of f whose leading coefficient is coprime to m (m >= 1).
// Columns (x, y) and (z, w) with xw - yz = 1; new leading coeff = f(x, y).
Form128 coprime_representative(const QuadForm& f, long long m) {
    std::vector<long long> primes = factor_u64(m);
    long long radical = 1, x = 0, y = 0;
    for (long long p : primes) {
        long long xp, yp;
        if (f.a % p != 0) {
            xp = 1; yp = 0;
        } else if (f.c % p != 0) {
            xp = 0; yp = 1;
        } else {
            xp = 1; yp = 1;  // f(1,1) = a+b+c ≡ b (mod p), nonzero by primitivity
        }
        // CRT-accumulate (x, y) ≡ (xp, yp) mod p
        long long inv_r, dummy;
        xgcd(radical % p, p, &inv_r, &dummy);
        long long tx = ((xp - x) % p * inv_r % p + p) % p;
        long long ty = ((yp - y) % p * inv_r % p + p) % p;
        x += radical * tx;
        y += radical * ty;
        radical *= p;
    }
    if (x == 0 && y == 0) x = 1;  // m == 1
    if (x == 0) x = radical;
    if (y == 0) y = radical;
    for (int guard = 0; std::gcd(x, y) != 1; ++guard) {
        if (guard > 1'000'000) throw std::logic_error("no primitive vector found");
        x += radical;
    }
    long long u, v;
    xgcd(x, y, &u, &v);  // x u + y v = 1
    long long z = -v, w = u;
    Form128 out;
    out.a = eval_form(f, x, y);
    out.b = 2 * static_cast<i128>(f.a) * x * z + static_cast<i128>(f.b) * (static_cast<i128>(x) * w + static_cast<i128>(y) * z) +
            2 * static_cast<i128>(f.c) * y * w;
    out.c = eval_form(f, z, w);
    // translate to shrink |b|: (x, y) -> (x + t y, y) keeps the leading coeff
    i128 twoa = 2 * out.a;
    if (twoa != 0) {
        i128 t = floordiv(out.a - out.b, twoa);
        out.c += t * (out.b + t * out.a);
        out.b += t * twoa;
    }
    return out;
}

i128 mod_i128(i128 v, i128 m) {
    v %= m;
    if (v < 0) v += m;
    return v;
}

}  // namespace

long long QuadForm::disc() const {
    return to_ll(static_cast<i128>(b) * b - 4 * static_cast<i128>(a) * c);
}

bool QuadForm::primitive() const { return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c)) == 1; }

QuadForm reduce_form(const QuadForm& f) {
    long long d = f.disc();
    if (d == 0 || (d > 0 && is_square_ll(d))) throw std::invalid_argument("square or zero discriminant");
    if (d < 0 && f.a < 0) throw std::invalid_argument("negative definite form");
    Form128 r = reduce128({f.a, f.b, f.c});
    return {to_ll(r.a), to_ll(r.b), to_ll(r.c)};
}

bool is_reduced(const QuadForm& f) {
    long long d = f.disc();
    if (d < 0) {
        if (f.a <= 0) return false;
        if (!(std::abs(f.b) <= f.a && f.a <= f.c)) return false;
        if ((std::abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
        return true;
    }
    long long r = isqrt_ll(d);
    return reduced_indefinite({f.a, f.b, f.c}, r);
}

QuadForm rho_step(const QuadForm& f) {
    long long d = f.disc();
    if (d <= 0 || is_square_ll(d)) throw std::invalid_argument("rho_step needs a positive nonsquare discriminant");
    Form128 g = rho_indefinite({f.a, f.b, f.c}, isqrt_ll(d));
    return {to_ll(g.a), to_ll(g.b), to_ll(g.c)};
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
    long long d = f.disc();
    if (g.disc() != d) throw std::invalid_argument("composition needs equal discriminants");
    if (d == 0 || (d > 0 && is_square_ll(d)))
        throw std::invalid_argument("square or zero discriminant");
    if (!f.primitive() || !g.primitive()) throw std::invalid_argument("composition needs primitive forms");

    // Representative of [g] whose leading coefficient is coprime to f.a, so
    // that the middle coefficients can be aligned by CRT (Dirichlet
    // composition of united forms).
    Form128 gg;
    if (std::gcd(std::abs(f.a), std::abs(g.a)) == 1) {
        gg = {g.a, g.b, g.c};
    } else {
        gg = coprime_representative(g, std::abs(f.a));
    }

    i128 a1 = f.a, b1 = f.b;
    i128 a2 = gg.a, b2 = gg.b;
    i128 abs_a2 = a2 < 0 ? -a2 : a2;
    // B ≡ b1 (mod 2 a1), B ≡ b2 (mod 2 a2): B = b1 + 2 a1 k with
    // k ≡ (b2 - b1)/2 · a1^{-1} (mod |a2|).
    i128 B;
    if (abs_a2 == 1) {
        B = b1;
    } else {
        long long inv, dummy;
        long long a1_mod = to_ll(mod_i128(a1, abs_a2));
        xgcd(a1_mod, to_ll(abs_a2), &inv, &dummy);
        i128 k = mod_i128((b2 - b1) / 2, abs_a2) * mod_i128(inv, abs_a2) % abs_a2;
        B = b1 + 2 * a1 * k;
    }
    i128 A = a1 * a2;
    i128 C = (B * B - d) / (4 * A);
    Form128 reduced = reduce128({A, B, C});
    if (d < 0 && reduced.a < 0) throw std::logic_error("definite composition lost positivity");
    return {to_ll(reduced.a), to_ll(reduced.b), to_ll(reduced.c)};
}

bool equivalent(const QuadForm& f, const QuadForm& g) {
    if (f.disc() != g.disc()) return false;
    QuadForm rf = reduce_form(f), rg = reduce_form(g);
    if (f.disc() < 0) return rf == rg;
    QuadForm cur = rf;
    do {
        if (cur == rg) return true;
        cur = rho_step(cur);
    } while (cur != rf);
    return false;
}

QuadForm principal_form(long long disc) {
    long long r = ((disc % 2) + 2) % 2;
    long long b0;
    if (disc < 0) {
        b0 = r;
    } else {
        long long root = isqrt_ll(disc);
        b0 = (root % 2 == r) ? root : root - 1;
    }
    return {1, b0, to_ll((static_cast<i128>(b0) * b0 - disc) / 4)};
}

namespace {

// Divisors of m (factored via spf) lying in [lo, hi], unsorted.
void divisors_in_window(long long m, long long lo, long long hi, const std::vector<uint32_t>& spf,
                        std::vector<long long>* out) {
    long long primes[16];
    int exps[16];
    int np = 0;
    long long v = m;
    while (v > 1) {
        long long p = spf[static_cast<size_t>(v)];
        primes[np] = p;
        exps[np] = 0;
        while (v % p == 0) {
            v /= p;
            ++exps[np];
        }
        ++np;
    }
    // iterative product enumeration
    std::vector<long long> divs{1};
    for (int i = 0; i < np; ++i) {
        size_t base = divs.size();
        long long pk = 1;
        for (int e = 1; e <= exps[i]; ++e) {
            pk *= primes[i];
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    for (long long dv : divs)
        if (dv >= lo && dv <= hi) out->push_back(dv);
}

uint64_t form_key(long long a, long long b) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(static_cast<int32_t>(a))) << 32) |
           static_cast<uint32_t>(static_cast<int32_t>(b));
}

const std::vector<uint32_t>& spf_for(long long need, const SieveTables* sieve,
                                     std::vector<uint32_t>* local) {
    if (sieve && sieve->limit >= need) return sieve->spf;
    local->assign(static_cast<size_t>(need) + 1, 0);
    auto& spf = *local;
    if (need >= 1) spf[1] = 1;
    for (size_t i = 2; i < spf.size(); ++i)
        if (spf[i] == 0)
            for (size_t j = i; j < spf.size(); j += i)
                if (spf[j] == 0) spf[j] = static_cast<uint32_t>(i);
    return *local;
}

}  // namespace

FormClassGroup class_group(long long disc, const ClassGroupOptions& opts, const SieveTables* sieve) {
    if (disc == 0 || disc == 1) throw std::invalid_argument("not a discriminant");
    long long r4 = ((disc % 4) + 4) % 4;
    if (r4 == 2 || r4 == 3) throw std::invalid_argument("discriminant must be 0 or 1 mod 4");
    long long abs_disc = std::abs(disc);
    if (abs_disc > opts.disc_budget) throw budget_error("discriminant exceeds budget");
    if (disc > 0 && is_square_ll(disc)) throw std::invalid_argument("square discriminant");

    FormClassGroup out;
    out.disc = disc;
    out.fundamental = is_fundamental_discriminant(disc);
    if (!out.fundamental && !opts.allow_nonfundamental)
        throw std::invalid_argument("non-fundamental discriminant (pass allow_nonfundamental to browse)");

    std::vector<uint32_t> local_spf;
    // b² ≤ |Δ|/3 in the definite enumeration, so ac = (b²+|Δ|)/4 ≤ |Δ|/3.
    const std::vector<uint32_t>& spf = spf_for(abs_disc / 3 + 2, sieve, &local_spf);

    if (disc < 0) {
        const long long bmax = isqrt_ll(abs_disc / 3);
        std::vector<long long> window;
        for (long long b = abs_disc & 1; b <= bmax; b += 2) {
            long long m = (b * b + abs_disc) / 4;
            window.clear();
            divisors_in_window(m, std::max(b, 1LL), isqrt_ll(m), spf, &window);
            for (long long a : window) {
                long long c = m / a;
                if (std::gcd(std::gcd(a, b), c) != 1) continue;
                out.reps.push_back({a, b, c});
                if (b != 0 && b != a && a != c) out.reps.push_back({a, -b, c});
            }
        }
        std::sort(out.reps.begin(), out.reps.end());
        QuadForm principal = principal_form(disc);
        out.principal_index =
            static_cast<size_t>(std::lower_bound(out.reps.begin(), out.reps.end(), principal) -
                                out.reps.begin());
        if (out.principal_index >= out.reps.size() || !(out.reps[out.principal_index] == principal))
            throw std::logic_error("principal class missing from the enumeration");

        out.three_torsion = 1;
        if (out.h() % 3 == 0) {
            long long t3 = 0;
            for (const QuadForm& f : out.reps) {
                QuadForm cube = compose(compose(f, f), f);
                if (cube == principal) ++t3;
            }
            out.three_torsion = t3;
        }
        return out;
    }

    // Δ > 0: enumerate reduced forms, partition into ρ-cycles.
    const long long root = isqrt_ll(disc);
    std::unordered_map<uint64_t, int> cycle_of;
    std::vector<QuadForm> all;
    std::vector<long long> window;
    for (long long b = 2 - (disc & 1); b <= root; b += 2) {
        long long m = (disc - b * b) / 4;
        if (m <= 0) continue;
        long long lo = (root + 1 - b + 1) / 2;  // smallest d with 2d >= root+1-b
        long long hi = (root + b) / 2;
        window.clear();
        divisors_in_window(m, std::max(lo, 1LL), hi, spf, &window);
        for (long long d : window) {
            long long c = m / d;
            if (std::gcd(std::gcd(d, b), c) != 1) continue;
            all.push_back({d, b, -c});
            all.push_back({-d, b, c});
        }
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    int next_cycle = 0;
    std::vector<QuadForm> cycle_reps;
    std::vector<std::vector<QuadForm>> cycles;
    for (const QuadForm& f : all) {
        if (cycle_of.count(form_key(f.a, f.b))) continue;
        std::vector<QuadForm> cycle;
        QuadForm cur = f;
        do {
            cycle_of[form_key(cur.a, cur.b)] = next_cycle;
            cycle.push_back(cur);
            cur = rho_step(cur);
        } while (!(cur == f));
        cycle_reps.push_back(*std::min_element(cycle.begin(), cycle.end()));
        cycles.push_back(std::move(cycle));
        ++next_cycle;
    }
    // order classes by their smallest member
    std::vector<size_t> order(cycle_reps.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t i, size_t j) { return cycle_reps[i] < cycle_reps[j]; });
    QuadForm principal = principal_form(disc);
    int principal_cycle = cycle_of.at(form_key(principal.a, principal.b));
    for (size_t rank = 0; rank < order.size(); ++rank) {
        size_t idx = order[rank];
        out.reps.push_back(cycle_reps[idx]);
        out.cycles.push_back(cycles[idx]);
        if (static_cast<int>(idx) == principal_cycle) out.principal_index = rank;
    }

    out.three_torsion = 1;
    if (out.h() % 3 == 0) {
        std::unordered_set<uint64_t> principal_keys;
        for (const QuadForm& f : out.cycles[out.principal_index])
            principal_keys.insert(form_key(f.a, f.b));
        long long t3 = 0;
        for (const QuadForm& f : out.reps) {
            QuadForm cube = compose(compose(f, f), f);
            if (principal_keys.count(form_key(cube.a, cube.b))) ++t3;
        }
        out.three_torsion = t3;
    }
    return out;
}

long long three_torsion_count(long long disc, const ClassGroupOptions& opts, const SieveTables* sieve) {
    return class_group(disc, opts, sieve).three_torsion;
}

long long h3(long long disc, const ClassGroupOptions& opts, const SieveTables* sieve) {
    if (!is_fundamental_discriminant(disc))
        throw std::invalid_argument("h3 is defined for fundamental discriminants only");
    return (three_torsion_count(disc, opts, sieve) - 1) / 2;
}

ClassGroupCache ClassGroupCache::load(const std::string& path) {
    ClassGroupCache cache;
    std::ifstream in(path);
    if (!in) return cache;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "disc,h,t3") continue;
        std::istringstream row(line);
        long long d, h, t3;
        char comma;
        if (row >> d >> comma >> h >> comma >> t3) cache.map_[d] = {h, t3};
    }
    return cache;
}

bool ClassGroupCache::lookup(long long disc, long long* h, long long* t3) const {
    auto it = map_.find(disc);
    if (it == map_.end()) return false;
    *h = it->second.first;
    *t3 = it->second.second;
    return true;
}

void ClassGroupCache::store(long long disc, long long h, long long t3) { map_[disc] = {h, t3}; }

void ClassGroupCache::save(const std::string& path) const {
    std::vector<std::pair<long long, std::pair<long long, long long>>> rows(map_.begin(), map_.end());
    std::sort(rows.begin(), rows.end());
    std::ofstream out(path, std::ios::trunc);
    out << "disc,h,t3\n";
    for (const auto& [d, ht] : rows) out << d << "," << ht.first << "," << ht.second << "\n";
}

}  // namespace keiarith
