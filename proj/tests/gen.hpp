#pragma once

// Seeded random Ore data for property tests and the solver cross-checks.

#include "skewmat/ore.hpp"

#include <random>

namespace gen {

using namespace skewmat;

inline OrePoly random_poly(const OreRing& R, std::mt19937& rng, int maxdeg, bool allow_zero = true) {
    std::uniform_int_distribution<int> degd(0, maxdeg);
    std::uniform_int_distribution<int> coefd(0, R.F->q - 1);
    std::vector<int> c(degd(rng) + 1, 0);
    for (int& x : c) x = coefd(rng);
    OrePoly f = OrePoly::from(std::move(c));
    if (!allow_zero && f.zero()) f = OrePoly::constant(1 + coefd(rng) % (R.F->q - 1));
    return f;
}

inline OreFrac random_frac(const OreRing& R, std::mt19937& rng, int maxdeg, bool nonzero = false) {
    OrePoly den = random_poly(R, rng, maxdeg, false);
    OrePoly num = random_poly(R, rng, maxdeg, !nonzero);
    return f_normalize(R, {den, num});
}

inline OreFamily random_family(std::mt19937& rng) {
    std::uniform_int_distribution<int> pd(0, 2);
    int which = pd(rng);
    int p = which == 2 ? 3 : 2;
    int k = which == 1 ? 2 : 1;
    OreFamily V;
    V.R = OreRing{GFTable::get(p, k)};
    std::uniform_int_distribution<int> dd(1, 3), nd(2, 6), zd(0, 3);
    V.d = dd(rng);
    int n = nd(rng);
    V.labels = Matroid::default_labels(n);
    V.cols.resize(n);
    for (int e = 0; e < n; ++e) {
        V.cols[e].resize(V.d);
        for (int i = 0; i < V.d; ++i)
            V.cols[e][i] = zd(rng) == 0 ? OrePoly{} : random_poly(V.R, rng, 2);
    }
    return V;
}

} // namespace gen
