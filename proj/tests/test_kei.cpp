#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "keiarith/kei.hpp"

using namespace keiarith;

TEST_CASE("axiom checking") {
    CHECK(check_kei_axioms(1, {{0}}).empty());
    CHECK(KeiTable::joyce().is_kei());

    // m = 2 table with op[0][0] = 1 violates K1 at x = 0
    auto violations = check_kei_axioms(2, {{1, 1}, {1, 1}});
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().axiom == 1);
    CHECK(violations.front().witness[0] == 0);

    CHECK_THROWS_AS(check_kei_axioms(2, {{0, 2}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(check_kei_axioms(2, {{0, 1}}), std::invalid_argument);

    // involutivity violation is reported as K2
    auto v2 = check_kei_axioms(3, {{0, 2, 1}, {2, 1, 2}, {1, 0, 2}});
    bool has_k2 = false;
    for (const auto& v : v2) has_k2 |= v.axiom == 2;
    CHECK(has_k2);
}

TEST_CASE("standard tables") {
    KeiTable t3 = KeiTable::trivial(3);
    CHECK(t3.is_kei());
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) CHECK(t3.apply(x, y) == y);

    KeiTable t0 = KeiTable::trivial(0);
    CHECK(t0.empty());
    CHECK(t0.is_kei());

    KeiTable j = KeiTable::joyce();
    // 0 = x+, 1 = x-, 2 = y
    CHECK(j.apply(2, 0) == 1);  // y ▷ x+ = x-
    CHECK(j.apply(2, 1) == 0);
    CHECK(j.apply(0, 2) == 2);  // x+ ▷ y = y
    CHECK(j.apply(0, 1) == 1);
    CHECK(j.is_kei());

    KeiTable r3 = KeiTable::dihedral(3);
    CHECK(r3.apply(0, 1) == 2);  // conjugating r_1 by r_0 in the triangle group
    for (int x = 0; x < 3; ++x) CHECK(r3.apply(x, x) == x);
    CHECK(r3.is_kei());
    CHECK(KeiTable::dihedral(5).is_kei());
    CHECK(KeiTable::dihedral(15).is_kei());
    CHECK_THROWS_AS(KeiTable::dihedral(4), std::invalid_argument);
    CHECK_THROWS_AS(KeiTable::dihedral(1), std::invalid_argument);
}

TEST_CASE("translation properties") {
    // φ_x ∘ φ_x = id and φ_{x▷y} = φ_x φ_y φ_x^{-1} on assorted keis
    std::vector<KeiTable> keis = {KeiTable::trivial(4), KeiTable::joyce(), KeiTable::dihedral(3),
                                  KeiTable::dihedral(7),
                                  disjoint_union(KeiTable::joyce(), KeiTable::dihedral(5))};
    for (const auto& k : keis) {
        for (int x = 0; x < k.size(); ++x) {
            Permutation phi = k.translation(x);
            CHECK(phi.then(phi).is_identity());
            for (int y = 0; y < k.size(); ++y) {
                Permutation lhs = k.translation(k.apply(x, y));
                Permutation rhs = phi.inverse().then(k.translation(y)).then(phi);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("random tables passing the checker satisfy sampled axioms") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> size_dist(1, 4);
    int accepted = 0;
    for (int trial = 0; trial < 4000; ++trial) {
        int m = size_dist(rng);
        std::uniform_int_distribution<int> entry(0, m - 1);
        std::vector<int> op(static_cast<size_t>(m) * m);
        for (auto& v : op) v = entry(rng);
        KeiTable k(m, op);
        if (!k.is_kei()) continue;
        ++accepted;
        std::uniform_int_distribution<int> pt(0, m - 1);
        for (int i = 0; i < 1000; ++i) {
            int x = pt(rng), y = pt(rng), z = pt(rng);
            CHECK(k.apply(x, x) == x);
            CHECK(k.apply(x, k.apply(x, y)) == y);
            CHECK(k.apply(x, k.apply(y, z)) == k.apply(k.apply(x, y), k.apply(x, z)));
        }
    }
    CHECK(accepted > 0);
}

TEST_CASE("disjoint union") {
    KeiTable u = disjoint_union(KeiTable::trivial(1), KeiTable::trivial(1));
    CHECK(is_isomorphic(u, KeiTable::trivial(2)));

    KeiTable jt2 = disjoint_union(KeiTable::joyce(), KeiTable::trivial(2));
    CHECK(jt2.size() == 5);
    CHECK(jt2.is_kei());
    CHECK(inner_group(jt2).order() == 2);

    // associative and commutative up to isomorphism
    KeiTable a = KeiTable::joyce(), b = KeiTable::trivial(2), c = KeiTable::dihedral(3);
    CHECK(is_isomorphic(disjoint_union(a, b), disjoint_union(b, a)));
    CHECK(is_isomorphic(disjoint_union(disjoint_union(a, b), c),
                        disjoint_union(a, disjoint_union(b, c))));

    CHECK(is_isomorphic(disjoint_union(KeiTable(), a), a));
}

TEST_CASE("inner groups") {
    CHECK(inner_group(KeiTable::trivial(4)).order() == 1);
    CHECK(inner_group(KeiTable::joyce()).order() == 2);
    CHECK(inner_group(KeiTable::dihedral(3)).order() == 6);
    CHECK(inner_group(KeiTable::dihedral(5)).order() == 10);
    CHECK(inner_group(KeiTable::trivial(0)).order() == 1);
}

TEST_CASE("orbits") {
    auto t3_orbits = orbits(KeiTable::trivial(3));
    CHECK(t3_orbits.size() == 3);

    auto j_orbits = orbits(KeiTable::joyce());
    REQUIRE(j_orbits.size() == 2);
    CHECK(j_orbits[0] == std::vector<int>{0, 1});
    CHECK(j_orbits[1] == std::vector<int>{2});

    CHECK(orbits(KeiTable::dihedral(3)).size() == 1);
}

TEST_CASE("sub-keis") {
    auto j_subs = sub_keis(KeiTable::joyce());
    std::vector<std::vector<int>> expected = {{}, {0}, {1}, {2}, {0, 1}, {0, 1, 2}};
    CHECK(j_subs == expected);

    CHECK(sub_keis(KeiTable::trivial(2)).size() == 4);

    auto r3_subs = sub_keis(KeiTable::dihedral(3));
    std::vector<std::vector<int>> r3_expected = {{}, {0}, {1}, {2}, {0, 1, 2}};
    CHECK(r3_subs == r3_expected);

    CHECK_THROWS_AS(sub_keis(KeiTable::trivial(17)), budget_error);
}

TEST_CASE("hilbert degree") {
    for (int a = 1; a <= 4; ++a) CHECK(hilbert_degree(KeiTable::trivial(a)) == a - 1);
    CHECK(hilbert_degree(KeiTable::joyce()) == 1);
    CHECK(hilbert_degree(KeiTable::dihedral(3)) == 0);
    for (int a = 0; a <= 3; ++a) {
        KeiTable k = disjoint_union(KeiTable::joyce(), KeiTable::trivial(a));
        CHECK(hilbert_degree(k) == a + 1);
    }
}

TEST_CASE("hom counts") {
    KeiTable r3 = KeiTable::dihedral(3);
    CHECK(hom_count(KeiTable::trivial(1), r3) == 3);
    CHECK(hom_count(KeiTable::trivial(1), KeiTable::joyce()) == 3);
    CHECK(hom_count(KeiTable(), r3) == 1);
    CHECK(hom_count(r3, r3) == 9);  // 3 constants + 6 automorphisms

    // brute-force oracle on all maps for small pairs
    auto oracle = [](const KeiTable& src, const KeiTable& dst) {
        long long count = 0;
        int ms = src.size(), md = dst.size();
        std::vector<int> img(static_cast<size_t>(ms), 0);
        while (true) {
            bool ok = true;
            for (int x = 0; x < ms && ok; ++x)
                for (int y = 0; y < ms && ok; ++y)
                    if (img[static_cast<size_t>(src.apply(x, y))] !=
                        dst.apply(img[static_cast<size_t>(x)], img[static_cast<size_t>(y)]))
                        ok = false;
            if (ok) ++count;
            int pos = ms - 1;
            while (pos >= 0 && img[static_cast<size_t>(pos)] + 1 == md) img[static_cast<size_t>(pos--)] = 0;
            if (pos < 0) break;
            ++img[static_cast<size_t>(pos)];
        }
        return count;
    };
    std::vector<KeiTable> keis = {KeiTable::trivial(2), KeiTable::joyce(), KeiTable::dihedral(3)};
    for (const auto& src : keis)
        for (const auto& dst : keis) CHECK(hom_count(src, dst) == oracle(src, dst));
}

TEST_CASE("kei enumeration") {
    CHECK(enumerate_keis(0).size() == 1);
    CHECK(enumerate_keis(1).size() == 1);
    CHECK(enumerate_keis(2).size() == 1);

    auto threes = enumerate_keis(3);
    REQUIRE(threes.size() == 3);
    int trivial_hits = 0, joyce_hits = 0, dihedral_hits = 0;
    for (const auto& k : threes) {
        CHECK(k.is_kei());
        if (is_isomorphic(k, KeiTable::trivial(3))) ++trivial_hits;
        if (is_isomorphic(k, KeiTable::joyce())) ++joyce_hits;
        if (is_isomorphic(k, KeiTable::dihedral(3))) ++dihedral_hits;
    }
    CHECK(trivial_hits == 1);
    CHECK(joyce_hits == 1);
    CHECK(dihedral_hits == 1);

    // T4, J ⊔ T1, R3 ⊔ T1, and the two keis with crossing translations
    auto fours = enumerate_keis(4);
    CHECK(fours.size() == 5);
    for (const auto& k : fours) CHECK(k.is_kei());
    for (size_t i = 0; i < fours.size(); ++i)
        for (size_t j = i + 1; j < fours.size(); ++j) CHECK_FALSE(is_isomorphic(fours[i], fours[j]));
    int unions_found = 0;
    for (const auto& k : fours) {
        if (is_isomorphic(k, KeiTable::trivial(4))) ++unions_found;
        if (is_isomorphic(k, disjoint_union(KeiTable::joyce(), KeiTable::trivial(1)))) ++unions_found;
        if (is_isomorphic(k, disjoint_union(KeiTable::dihedral(3), KeiTable::trivial(1))))
            ++unions_found;
    }
    CHECK(unions_found == 3);

    CHECK_THROWS_AS(enumerate_keis(5), budget_error);
}

TEST_CASE("kei expressions") {
    KeiExpr e = KeiExpr::parse("J+T(2)");
    CHECK(e.str() == "J+T(2)");
    CHECK(e.realized_size() == 5);
    CHECK(is_isomorphic(e.realize(), disjoint_union(KeiTable::joyce(), KeiTable::trivial(2))));

    CHECK(KeiExpr::parse("R3").realize() == KeiTable::dihedral(3));
    CHECK(KeiExpr::parse("R(3)").realize() == KeiTable::dihedral(3));
    CHECK(KeiExpr::parse(" T(1) + R(5) ").realized_size() == 6);
    CHECK(KeiExpr::parse("T(0)").realize().empty());

    CHECK_THROWS_AS(KeiExpr::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(KeiExpr::parse("Q"), std::invalid_argument);
    CHECK_THROWS_AS(KeiExpr::parse("T(2"), std::invalid_argument);
    CHECK_THROWS_AS(KeiExpr::parse("R(4)"), std::invalid_argument);
    CHECK_THROWS_AS(KeiExpr::parse("J+"), std::invalid_argument);

    // realization size = sum of atom sizes, and the union realization is the
    // block table
    KeiExpr big = KeiExpr::parse("T(2)+J+R3");
    KeiTable manual = disjoint_union(disjoint_union(KeiTable::trivial(2), KeiTable::joyce()),
                                     KeiTable::dihedral(3));
    CHECK(big.realize() == manual);
}

TEST_CASE("table JSON round trip") {
    KeiTable j = KeiTable::joyce();
    CHECK(j.to_json() == R"({"size":3,"op":[[0,1,2],[0,1,2],[1,0,2]]})");
    CHECK(KeiTable::from_json(j.to_json()) == j);
    CHECK_THROWS_AS(KeiTable::from_json("{\"size\":2,\"op\":[[0,5],[0,1]]}"), std::invalid_argument);
    CHECK_THROWS_AS(KeiTable::from_json("not json"), std::invalid_argument);
}
