#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "keiarith/kei.hpp"

namespace keiarith {

// Words in the Artin generators of B_k and their coloring action on tuples.
//
// A generator letter i > 0 acts on the pair at positions (i, i+1) by
// (a, b) -> (b, b ▷ a); the letter -i acts by (a, b) -> (a ▷ b, a).
// Tuples fixed by the whole word are exactly the kei-colorings of the
// braid closure.

struct BraidWord {
    int strands = 1;
    std::vector<int> letters;  // signed generator indices, |i| in [1, strands)

    BraidWord() = default;
    BraidWord(int k, std::vector<int> ls);

    // Comma-separated signed integers, e.g. "1,1,1"; empty text = empty word.
    static BraidWord parse(int strands, std::string_view csv);
    std::string str() const;
};

using ColorTuple = std::vector<int>;

ColorTuple apply_generator(const KeiTable& k, const ColorTuple& tuple, int letter);
ColorTuple apply_word(const KeiTable& k, ColorTuple tuple, const BraidWord& word);

// Number of cycles of the underlying permutation; equals the number of
// connected components of the closure.
int closure_components(const BraidWord& word);

// Number of tuples fixed by the word action = colorings of the closure.
long long closure_coloring_count(const KeiTable& k, const BraidWord& word,
                                 long long state_budget = 10'000'000);

// Haar-average number of colorings of closures of random braids on the given
// number of strands. The coloring action factors through a finite permutation
// group on the |k|^strands tuples, so the average equals the number of orbits
// (Burnside); the result is an exact integer.
long long haar_average_colorings(const KeiTable& k, int strands,
                                 long long state_budget = 10'000'000);

// The two orbit-counting kernels behind haar_average_colorings. The serial
// sweep is the reference; the parallel one uses lock-free union-find.
long long coloring_orbit_count_serial(const KeiTable& k, int strands, long long state_budget);
long long coloring_orbit_count_parallel(const KeiTable& k, int strands, long long state_budget);

// Closed-form braid-average value for the supported expression families:
// T(a) -> C(a+k-1, a-1); J+T(a) -> 2 C(k+a+1, a+1) - C(k+a, a); R3 -> 6.
// Valid for large enough strand counts; returns false if no closed form.
bool polynomial_expected(const KeiExpr& expr, int strands, long long* value);

struct MarkovCase {
    std::string kind;  // "conjugation" or "stabilization"
    BraidWord original;
    BraidWord transformed;
    long long count_original;
    long long count_transformed;
    bool pass;
};

struct MarkovReport {
    int cases = 0;
    int passes = 0;
    std::vector<MarkovCase> failures;
    bool all_pass() const { return passes == cases; }
};

// Sanity suite for isotopy invariance of the closure count: random
// conjugations preserve the count, and so does stabilization
// w -> w · σ_k^{±1} into B_{k+1}. Deterministic for a fixed seed.
MarkovReport markov_property_test(const KeiTable& k, const BraidWord& word, int trials,
                                  uint64_t seed = 0x6b656921, long long state_budget = 10'000'000);

}  // namespace keiarith
