#include "doctest.h"

#include "skewmat/io.hpp"
#include "skewmat/matroid.hpp"

#include <functional>

using namespace skewmat;

TEST_CASE("construction from bases") {
    Matroid U24 = Matroid::uniform(2, 4);
    CHECK(U24.rank == 2);
    CHECK(U24.bases.size() == 6);
    CHECK(U24.circuits().size() == 4); // the 3-subsets

    Matroid R1 = Matroid::from_bases({"1", "2", "3"}, {0b001, 0b010});
    CHECK(R1.rank == 1);
    CHECK(R1.dependent(0b100)); // 3 is a loop
    CHECK(std::find(R1.circuits().begin(), R1.circuits().end(), 0b100) != R1.circuits().end());

    // exchange failure with witness
    CHECK_THROWS_WITH_AS(Matroid::from_bases({"1", "2", "3", "4"}, {0b0011, 0b1100}),
                         doctest::Contains("basis exchange fails"), matroid_error);
    CHECK_THROWS_AS(Matroid::from_bases({"1", "2"}, {0b01, 0b11}), matroid_error); // cardinality
    CHECK_THROWS_AS(Matroid::from_bases({"1"}, {}), matroid_error);
}

TEST_CASE("construction from circuits") {
    std::vector<Mask> threes;
    for (Mask m = 0; m < 16; ++m)
        if (popcount(m) == 3) threes.push_back(m);
    Matroid M = Matroid::from_circuits(Matroid::default_labels(4), threes);
    CHECK(M == Matroid::uniform(2, 4));

    Matroid free = Matroid::from_circuits(Matroid::default_labels(3), {});
    CHECK(free.rank == 3);
    CHECK(free.bases.size() == 1);

    // {12, 13} misses the elimination circuit 23
    CHECK_THROWS_AS(Matroid::from_circuits(Matroid::default_labels(3), {0b011, 0b101}), matroid_error);
    CHECK_THROWS_AS(Matroid::from_circuits(Matroid::default_labels(3), {0b011, 0b101},
                                           Matroid::CircuitMode::modular),
                    matroid_error);
    CHECK_THROWS_AS(Matroid::from_circuits(Matroid::default_labels(2), {0b01, 0b11}), matroid_error);
    CHECK_THROWS_AS(Matroid::from_circuits(Matroid::default_labels(2), {0}), matroid_error);
}

TEST_CASE("full and modular elimination accept the same antichains on <= 5 elements") {
    // every antichain of nonempty subsets of a 5-set, by backtracking
    const int n = 5;
    std::vector<Mask> subsets;
    for (Mask m = 1; m < (1u << n); ++m) subsets.push_back(m);
    long long agree = 0, accepted = 0;
    std::vector<Mask> chosen;
    std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == subsets.size()) {
            if (chosen.empty()) return;
            bool ok_full, ok_mod;
            try {
                Matroid::from_circuits(Matroid::default_labels(n), chosen);
                ok_full = true;
            } catch (const matroid_error&) {
                ok_full = false;
            }
            try {
                Matroid::from_circuits(Matroid::default_labels(n), chosen,
                                       Matroid::CircuitMode::modular);
                ok_mod = true;
            } catch (const matroid_error&) {
                ok_mod = false;
            }
            REQUIRE(ok_full == ok_mod);
            ++agree;
            if (ok_full) ++accepted;
            return;
        }
        rec(idx + 1);
        Mask cand = subsets[idx];
        for (Mask c : chosen)
            if ((c & ~cand) == 0 || (cand & ~c) == 0) return;
        chosen.push_back(cand);
        rec(idx + 1);
        chosen.pop_back();
    };
    rec(0);
    CHECK(agree > 7000); // all antichains were visited
    CHECK(accepted > 0);
}

TEST_CASE("duality, minors, derived families") {
    Matroid U24 = Matroid::uniform(2, 4);
    CHECK(U24.dual() == U24);
    CHECK(U24.dual().dual() == U24);

    Matroid c1 = U24.minor(0b0001, 0); // contract {1}
    CHECK(c1 == Matroid::uniform(1, 3, {"2", "3", "4"}));
    CHECK(U24.minor(0, 0b0001) == Matroid::uniform(2, 3, {"2", "3", "4"}));
    CHECK(U24.minor(0, 0) == U24);
    CHECK_THROWS_AS(U24.minor(0b0011, 0b0010), matroid_error);

    // minor/dual exchange: (N/S\T)* = N*\S/T
    Matroid U25 = Matroid::uniform(2, 5);
    for (Mask S = 0; S < 32; ++S)
        for (Mask T = 0; T < 32; ++T) {
            if (S & T) continue;
            CHECK(U25.minor(S, T).dual() == U25.dual().minor(T, S));
        }

    // rank(N/S) = r(N) - r(S) for independent S
    CHECK(U25.minor(0b00011, 0).rank == 0);
    CHECK(U25.minor(0b00001, 0).rank == 1);

    auto cocircs = U24.cocircuits();
    CHECK(cocircs.size() == 4);
    for (Mask c : cocircs) CHECK(popcount(c) == 3);
    auto hyps = U24.hyperplanes();
    for (Mask h : hyps) CHECK(popcount(h) == 1);

    // circuits reconstruct the matroid
    for (const Matroid& N : {U24, U25, Matroid::from_bases({"1", "2", "3"}, {0b001, 0b010})}) {
        Matroid back = Matroid::from_circuits(N.labels, N.circuits());
        CHECK(back == N);
    }
}

TEST_CASE("adjacency, modular pairs, weak images") {
    Matroid U24 = Matroid::uniform(2, 4);
    CHECK(U24.adjacent_bases().size() == 24); // 6 bases x 4 ordered exchanges

    auto circ = U24.circuits();
    CHECK(U24.is_modular_pair(circ[0], circ[1])); // all circuit pairs modular in U24
    Matroid U36 = Matroid::uniform(3, 6);
    bool found_nonmodular = false;
    for (Mask c1 : U36.circuits())
        for (Mask c2 : U36.circuits())
            if (c1 != c2 && !U36.is_modular_pair(c1, c2)) found_nonmodular = true;
    CHECK(found_nonmodular);

    Matroid loops = Matroid::from_bases(Matroid::default_labels(4), {0b0001});
    CHECK(Matroid::weak_image(U24, loops)); // everything dependent stays dependent
    CHECK(!Matroid::weak_image(loops, U24));
    Matroid U14 = Matroid::uniform(1, 4);
    CHECK(Matroid::weak_image(U24, U14));
    CHECK(!Matroid::weak_image(U14, U24)); // independence would have to grow
}

TEST_CASE("larger ground sets stay within budget") {
    Matroid U310 = Matroid::uniform(3, 10);
    CHECK(U310.bases.size() == 120);
    CHECK(U310.circuits().size() == 210); // the 4-subsets
    CHECK(U310.dual().rank == 7);
    CHECK(U310.minor(0b1, 0b10).rank == 2);
    CHECK_THROWS_AS(Matroid::uniform(2, 17), matroid_error);
}

TEST_CASE("matroid text format") {
    Matroid U24 = Matroid::uniform(2, 4);
    Matroid back = load_matroid(dump_matroid(U24));
    CHECK(back == U24);

    Matroid fromc = load_matroid("ground: a b c\ncircuit: a b\ncircuit: a c\ncircuit: b c\n");
    CHECK(fromc.rank == 1);

    CHECK_THROWS_AS(load_matroid("basis: 1\n"), parse_error);
    CHECK_THROWS_AS(load_matroid("ground: 1 2\nbasis: 3\n"), parse_error);
    CHECK_THROWS_AS(load_matroid("ground: 1 2\nbasis: 1\ncircuit: 2\n"), parse_error);
    CHECK_THROWS_AS(load_matroid("ground: 1 2\nnonsense: 1\n"), parse_error);
}
