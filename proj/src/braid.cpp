#include "keiarith/braid.hpp"

#include <atomic>
#include <limits>
#include <charconv>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace keiarith {

BraidWord::BraidWord(int k, std::vector<int> ls) : strands(k), letters(std::move(ls)) {
    if (strands < 1) throw std::invalid_argument("braid needs at least one strand");
    for (int l : letters)
        if (l == 0 || l >= strands || l <= -strands)
            throw std::invalid_argument("braid letter out of range");
}

BraidWord BraidWord::parse(int strands, std::string_view csv) {
    std::vector<int> letters;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t comma = csv.find(',', pos);
        std::string_view tok = csv.substr(pos, comma == std::string_view::npos ? csv.size() - pos
                                                                               : comma - pos);
        size_t lo = tok.find_first_not_of(" \t");
        size_t hi = tok.find_last_not_of(" \t");
        if (lo == std::string_view::npos) throw std::invalid_argument("empty braid letter");
        tok = tok.substr(lo, hi - lo + 1);
        int value = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            throw std::invalid_argument("bad braid letter");
        letters.push_back(value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return BraidWord(strands, std::move(letters));
}

std::string BraidWord::str() const {
    std::string out;
    for (size_t i = 0; i < letters.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(letters[i]);
    }
    return out;
}

ColorTuple apply_generator(const KeiTable& k, const ColorTuple& tuple, int letter) {
    if (letter == 0 || std::abs(letter) > static_cast<int>(tuple.size()) - 1)
        throw std::invalid_argument("generator index out of range");
    for (int v : tuple)
        if (v < 0 || v >= k.size()) throw std::invalid_argument("tuple entry out of range");
    ColorTuple out = tuple;
    size_t i = static_cast<size_t>(std::abs(letter)) - 1;
    int a = tuple[i], b = tuple[i + 1];
    if (letter > 0) {
        out[i] = b;
        out[i + 1] = k.apply(b, a);
    } else {
        out[i] = k.apply(a, b);
        out[i + 1] = a;
    }
    return out;
}

ColorTuple apply_word(const KeiTable& k, ColorTuple tuple, const BraidWord& word) {
    for (int l : word.letters) tuple = apply_generator(k, tuple, l);
    return tuple;
}

int closure_components(const BraidWord& word) {
    std::vector<int> perm(static_cast<size_t>(word.strands));
    for (int i = 0; i < word.strands; ++i) perm[static_cast<size_t>(i)] = i;
    for (int l : word.letters) {
        size_t i = static_cast<size_t>(std::abs(l)) - 1;
        std::swap(perm[i], perm[i + 1]);
    }
    std::vector<char> seen(static_cast<size_t>(word.strands), 0);
    int cycles = 0;
    for (int s = 0; s < word.strands; ++s) {
        if (seen[static_cast<size_t>(s)]) continue;
        ++cycles;
        for (int v = s; !seen[static_cast<size_t>(v)]; v = perm[static_cast<size_t>(v)])
            seen[static_cast<size_t>(v)] = 1;
    }
    return cycles;
}

namespace {

long long checked_state_count(int kei_size, int strands, long long budget) {
    if (strands > 60) throw budget_error("strand count exceeds the supported maximum");
    budget = std::min(budget, static_cast<long long>(std::numeric_limits<int32_t>::max()));
    long long states = 1;
    for (int i = 0; i < strands; ++i) {
        if (kei_size != 0 && states > budget / kei_size)
            throw budget_error("coloring state space exceeds budget");
        states *= kei_size;
    }
    if (states > budget) throw budget_error("coloring state space exceeds budget");
    return states;
}

// Dense encoding of tuples as base-|k| integers, digit i = strand i.
struct StateCoder {
    int base;
    int strands;
    std::vector<long long> stride;  // stride[i] = base^i

    StateCoder(int b, int k) : base(b), strands(k), stride(static_cast<size_t>(k)) {
        long long s = 1;
        for (int i = 0; i < k; ++i) {
            stride[static_cast<size_t>(i)] = s;
            s *= b;
        }
    }
    int digit(long long state, int i) const {
        return static_cast<int>(state / stride[static_cast<size_t>(i)] % base);
    }
};

}  // namespace

long long closure_coloring_count(const KeiTable& k, const BraidWord& word, long long state_budget) {
    const long long states = checked_state_count(k.size(), word.strands, state_budget);
    if (k.size() == 0) return word.strands == 0 ? 1 : 0;
    const StateCoder coder(k.size(), word.strands);

    long long fixed = 0;
#pragma omp parallel for schedule(static) reduction(+ : fixed)
    for (long long s = 0; s < states; ++s) {
        // apply the word on the decoded tuple
        int tuple[64];
        for (int i = 0; i < word.strands; ++i) tuple[i] = coder.digit(s, i);
        for (int l : word.letters) {
            int i = std::abs(l) - 1;
            int a = tuple[i], b = tuple[i + 1];
            if (l > 0) {
                tuple[i] = b;
                tuple[i + 1] = k.apply(b, a);
            } else {
                tuple[i] = k.apply(a, b);
                tuple[i + 1] = a;
            }
        }
        long long t = 0;
        for (int i = 0; i < word.strands; ++i) t += coder.stride[static_cast<size_t>(i)] * tuple[i];
        if (t == s) ++fixed;
    }
    return fixed;
}

namespace {

long long generator_image(const KeiTable& k, const StateCoder& coder, long long state, int i) {
    int a = coder.digit(state, i);
    int b = coder.digit(state, i + 1);
    // σ_i: (a, b) -> (b, b ▷ a)
    return state + (b - a) * coder.stride[static_cast<size_t>(i)] +
           (k.apply(b, a) - b) * coder.stride[static_cast<size_t>(i + 1)];
}

}  // namespace

long long coloring_orbit_count_serial(const KeiTable& k, int strands, long long state_budget) {
    const long long states = checked_state_count(k.size(), strands, state_budget);
    if (k.size() == 0) return 0;
    if (strands < 1) throw std::invalid_argument("need at least one strand");
    const StateCoder coder(k.size(), strands);

    std::vector<int32_t> parent(static_cast<size_t>(states));
    for (long long s = 0; s < states; ++s) parent[static_cast<size_t>(s)] = static_cast<int32_t>(s);
    auto find = [&](int32_t v) {
        while (parent[static_cast<size_t>(v)] != v) {
            parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
            v = parent[static_cast<size_t>(v)];
        }
        return v;
    };

    for (int i = 0; i + 1 < strands; ++i) {
        for (long long s = 0; s < states; ++s) {
            int32_t a = find(static_cast<int32_t>(s));
            int32_t b = find(static_cast<int32_t>(generator_image(k, coder, s, i)));
            if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
        }
    }
    long long roots = 0;
    for (long long s = 0; s < states; ++s)
        if (parent[static_cast<size_t>(s)] == s) ++roots;
    return roots;
}

long long coloring_orbit_count_parallel(const KeiTable& k, int strands, long long state_budget) {
    const long long states = checked_state_count(k.size(), strands, state_budget);
    if (k.size() == 0) return 0;
    if (strands < 1) throw std::invalid_argument("need at least one strand");
    const StateCoder coder(k.size(), strands);

    std::vector<std::atomic<int32_t>> parent(static_cast<size_t>(states));
#pragma omp parallel for schedule(static)
    for (long long s = 0; s < states; ++s)
        parent[static_cast<size_t>(s)].store(static_cast<int32_t>(s), std::memory_order_relaxed);

    auto find = [&parent](int32_t v) {
        while (true) {
            int32_t p = parent[static_cast<size_t>(v)].load(std::memory_order_relaxed);
            if (p == v) return v;
            int32_t gp = parent[static_cast<size_t>(p)].load(std::memory_order_relaxed);
            // path halving; harmless if it loses a race
            parent[static_cast<size_t>(v)].compare_exchange_weak(p, gp, std::memory_order_relaxed);
            v = gp;
        }
    };
    auto unite = [&](int32_t a, int32_t b) {
        while (true) {
            a = find(a);
            b = find(b);
            if (a == b) return;
            if (a < b) std::swap(a, b);  // roots point at smaller indices
            int32_t expected = a;
            if (parent[static_cast<size_t>(a)].compare_exchange_strong(expected, b,
                                                                       std::memory_order_relaxed))
                return;
        }
    };

    for (int i = 0; i + 1 < strands; ++i) {
#pragma omp parallel for schedule(static)
        for (long long s = 0; s < states; ++s)
            unite(static_cast<int32_t>(s), static_cast<int32_t>(generator_image(k, coder, s, i)));
    }

    long long roots = 0;
#pragma omp parallel for schedule(static) reduction(+ : roots)
    for (long long s = 0; s < states; ++s)
        if (parent[static_cast<size_t>(s)].load(std::memory_order_relaxed) == s) ++roots;
    return roots;
}

long long haar_average_colorings(const KeiTable& k, int strands, long long state_budget) {
#ifdef _OPENMP
    if (omp_get_max_threads() > 1) return coloring_orbit_count_parallel(k, strands, state_budget);
#endif
    return coloring_orbit_count_serial(k, strands, state_budget);
}

namespace {

long long binomial(long long n, long long r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    long long out = 1;
    for (long long i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

}  // namespace

bool polynomial_expected(const KeiExpr& expr, int strands, long long* value) {
    long long trivial = 0, joyce = 0, dihedral3 = 0;
    for (const auto& atom : expr.atoms) {
        switch (atom.kind) {
            case KeiExpr::AtomKind::trivial: trivial += atom.param; break;
            case KeiExpr::AtomKind::joyce: ++joyce; break;
            case KeiExpr::AtomKind::dihedral:
                if (atom.param != 3) return false;
                ++dihedral3;
                break;
        }
    }
    const long long k = strands;
    if (joyce == 0 && dihedral3 == 0) {
        *value = binomial(trivial + k - 1, trivial - 1);
        return true;
    }
    if (joyce == 1 && dihedral3 == 0) {
        const long long a = trivial;
        *value = 2 * binomial(k + a + 1, a + 1) - binomial(k + a, a);
        return true;
    }
    if (joyce == 0 && dihedral3 == 1 && trivial == 0) {
        *value = 6;
        return true;
    }
    return false;
}

MarkovReport markov_property_test(const KeiTable& k, const BraidWord& word, int trials,
                                  uint64_t seed, long long state_budget) {
    MarkovReport report;
    std::mt19937_64 rng(seed);
    auto random_word = [&](int strands, int length) {
        std::vector<int> letters;
        std::uniform_int_distribution<int> gen(1, std::max(1, strands - 1));
        std::uniform_int_distribution<int> sign(0, 1);
        for (int i = 0; i < length; ++i) {
            int g = gen(rng);
            letters.push_back(sign(rng) ? g : -g);
        }
        return BraidWord(strands, std::move(letters));
    };

    const long long base = closure_coloring_count(k, word, state_budget);

    for (int t = 0; t < trials; ++t) {
        // conjugation w -> c w c^{-1}
        BraidWord conj = random_word(word.strands, 1 + t % 5);
        std::vector<int> letters = conj.letters;
        letters.insert(letters.end(), word.letters.begin(), word.letters.end());
        for (auto it = conj.letters.rbegin(); it != conj.letters.rend(); ++it)
            letters.push_back(-*it);
        BraidWord conjugated(word.strands, std::move(letters));
        long long got = closure_coloring_count(k, conjugated, state_budget);
        ++report.cases;
        if (got == base)
            ++report.passes;
        else
            report.failures.push_back({"conjugation", word, conjugated, base, got, false});

        // stabilization w -> w σ_k^{±1} in B_{k+1}
        std::vector<int> stab = word.letters;
        stab.push_back(t % 2 == 0 ? word.strands : -word.strands);
        BraidWord stabilized(word.strands + 1, std::move(stab));
        got = closure_coloring_count(k, stabilized, state_budget);
        ++report.cases;
        if (got == base)
            ++report.passes;
        else
            report.failures.push_back({"stabilization", word, stabilized, base, got, false});
    }
    return report;
}

}  // namespace keiarith
