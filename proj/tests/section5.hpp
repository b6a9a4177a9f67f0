#pragma once

// Shared fixture: the rank-2 four-column Ore vector family
//   v1 = [1, 0], v2 = [0, T^3], v3 = [T^2+T, T^2], v4 = [1, T^4+aT]
// over GF(p^k) with the Frobenius twist, together with hand-derived exact
// circuit/cocircuit vectors and their minimal-term images. The derived
// vectors are re-verified here by exact orthogonality (sum U_e v_e = 0),
// so downstream tests assert against independently checked values.

#include "skewmat/io.hpp"

#include <stdexcept>

namespace sec5 {

using namespace skewmat;

struct Fixture {
    OreRing R;
    HF H; // mono:gf:p:k:frob
    int a = 0;
    OreFamily fam;
    Matroid N;
    // exact polynomial vectors, indexed by circuit/cocircuit support mask
    std::map<Mask, std::vector<OrePoly>> circuit; // left kernels
    std::map<Mask, std::vector<OrePoly>> cocircuit; // right row combinations
    Signature mu_circ;   // left signature over H
    Signature mu_cocirc; // right signature of N* over H
};

inline Fixture make(int p, int k, const std::string& a_literal) {
    Fixture fx;
    fx.R = OreRing{GFTable::get(p, k)};
    const auto& F = *fx.R.F;
    fx.a = F.parse(a_literal);
    if (fx.a == 0) throw std::runtime_error("section5: a must be nonzero");
    fx.H = Hyperfield::monomial(Hyperfield::gf(p, k), Automorphism::frobenius_pow(1));
    auto T = [&](int d, int c = 1) { return OrePoly::t_power(d, c); };
    auto C = [&](int c) { return OrePoly::constant(c); };
    int a = fx.a, sa = F.frob(a, 1), s2a = F.frob(a, 2), s3a = F.frob(a, 3);
    fx.fam.R = fx.R;
    fx.fam.d = 2;
    fx.fam.labels = {"1", "2", "3", "4"};
    fx.fam.cols = {
        {C(1), {}},
        {{}, T(3)},
        {o_add(fx.R, T(2), T(1)), T(2)},
        {C(1), o_add(fx.R, T(4), T(1, a))},
    };
    fx.N = Matroid::uniform(2, 4);

    auto add3 = [&](OrePoly x, const OrePoly& y, const OrePoly& z) {
        return o_add(fx.R, o_add(fx.R, x, y), z);
    };
    // {1,2,3}: (T^3+T^2, 1, -T, 0)
    fx.circuit[0b0111] = {o_add(fx.R, T(3), T(2)), C(1), o_neg(fx.R, T(1)), {}};
    // {1,2,4}: (-T^2, -T^3 - s2a, 0, T^2)
    fx.circuit[0b1011] = {o_neg(fx.R, T(2)), o_neg(fx.R, o_add(fx.R, T(3), C(s2a))), {}, T(2)};
    // {1,3,4}: (T^5+T^4+sa T^2+(sa-1)T, 0, -T^3-sa, T)
    fx.circuit[0b1101] = {add3(o_add(fx.R, T(5), T(4)), T(2, sa), T(1, F.sub(sa, 1))), {},
                          o_neg(fx.R, o_add(fx.R, T(3), C(sa))), T(1)};
    // {2,3,4}: (0, T^4+T^3+s3a T+(s2a-1), T, -(T^3+T^2))
    fx.circuit[0b1110] = {{},
                          add3(o_add(fx.R, T(4), T(3)), T(1, s3a), C(F.sub(s2a, 1))), T(1),
                          o_neg(fx.R, o_add(fx.R, T(3), T(2)))};
    // cocircuits (complements of the hyperplanes {4},{3},{2},{1})
    fx.cocircuit[0b1110] = {{}, T(3), T(2), o_add(fx.R, T(4), T(1, a))};
    fx.cocircuit[0b1101] = {C(1), {}, o_add(fx.R, T(2), T(1)), C(1)};
    // {1,2,4}: (T, -(T^4+T^3), 0, -T^5-T^4-aT^2+(1-a)T)
    fx.cocircuit[0b1011] = {T(1), o_neg(fx.R, o_add(fx.R, T(4), T(3))), {},
                            add3(o_neg(fx.R, o_add(fx.R, T(5), T(4))), T(2, F.neg(a)),
                                 T(1, F.sub(1, a)))};
    // {1,2,3}: (-(T^4+aT), T^3, -T^6-T^5-s2a T^3+(1-sa)T^2, 0)
    fx.cocircuit[0b0111] = {o_neg(fx.R, o_add(fx.R, T(4), T(1, a))), T(3),
                            add3(o_neg(fx.R, o_add(fx.R, T(6), T(5))), T(3, F.neg(s2a)),
                                 T(2, F.sub(1, sa))),
                            {}};

    // re-verify the frozen vectors: exact kernels with the declared supports
    for (auto& [supp, U] : fx.circuit) {
        for (int i = 0; i < fx.fam.d; ++i) {
            OrePoly acc;
            for (int e = 0; e < 4; ++e) acc = o_add(fx.R, acc, o_mul(fx.R, U[e], fx.fam.cols[e][i]));
            if (!acc.zero()) throw std::runtime_error("section5: circuit vector is not a dependency");
        }
        Mask s = 0;
        for (int e = 0; e < 4; ++e)
            if (!U[e].zero()) s |= 1u << e;
        if (s != supp) throw std::runtime_error("section5: circuit support mismatch");
    }
    for (auto& [supp, Y] : fx.cocircuit) {
        for (auto& [csupp, U] : fx.circuit)
            if (!ore_dot(fx.R, U, Y).zero())
                throw std::runtime_error("section5: circuit/cocircuit dot is nonzero");
        Mask s = 0;
        for (int e = 0; e < 4; ++e)
            if (!Y[e].zero()) s |= 1u << e;
        if (s != supp) throw std::runtime_error("section5: cocircuit support mismatch");
    }

    std::vector<std::vector<HElem>> mu_c, mu_d;
    for (Mask c : fx.N.circuits()) {
        std::vector<HElem> v;
        for (const OrePoly& f : fx.circuit.at(c)) v.push_back(mu_poly(fx.R, fx.H, f));
        mu_c.push_back(std::move(v));
    }
    Matroid Nd = fx.N.dual();
    for (Mask c : Nd.circuits()) {
        std::vector<HElem> v;
        for (const OrePoly& f : fx.cocircuit.at(c)) v.push_back(mu_poly(fx.R, fx.H, f));
        mu_d.push_back(std::move(v));
    }
    fx.mu_circ = make_signature(Side::left, fx.H, fx.N, mu_c);
    fx.mu_cocirc = make_signature(Side::right, fx.H, Nd, mu_d);
    return fx;
}

} // namespace sec5
