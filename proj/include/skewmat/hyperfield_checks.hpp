#pragma once

// Axiom verification for hyperfield instances and homomorphisms between them.
// Finite carriers are checked exhaustively; Z_min and monomial carriers are
// checked on a level window of configurable half-width ("budget").

#include "skewmat/hyperfield.hpp"
#include "skewmat/report.hpp"

namespace skewmat {

inline Report axiom_check_hyperfield(const HF& H, int budget = 2) {
    Report rep;
    const auto elems = H->sample_window(-budget, budget);
    std::vector<HElem> nonzeros;
    for (const HElem& x : elems)
        if (!x.zero) nonzeros.push_back(x);
    auto pr = [&](const HElem& x) { return H->print(x); };

    rep.add("zero-ne-one", !(H->zero() == H->one()));

    // (H0) x + 0 = {x}
    for (const HElem& x : elems) {
        HSet s = H->add(x, H->zero());
        if (s.is_tail || s.elems.size() != 1 || !(s.elems[0] == x))
            rep.fail_once("H0", "x = " + pr(x));
    }
    rep.pass_if_absent("H0");

    // (H1) unique additive inverse
    for (const HElem& x : elems) {
        int count = 0;
        for (const HElem& y : elems)
            if (H->add(x, y).contains(H->zero())) ++count;
        bool window_truncated = !H->finite_carrier();
        if (count == 0 && !window_truncated) rep.fail_once("H1", "no inverse for " + pr(x));
        if (count > 1) rep.fail_once("H1", "multiple inverses for " + pr(x));
        if (count >= 1) {
            try {
                HElem n = H->neg(x);
                if (!H->add(x, n).contains(H->zero()))
                    rep.fail_once("H1", "neg(" + pr(x) + ") is not a witness");
            } catch (const hf_error& e) {
                rep.fail_once("H1", e.what());
            }
        }
    }
    rep.pass_if_absent("H1");

    // (H2) x in y+z  <=>  z in x+(-y)
    for (const HElem& x : elems)
        for (const HElem& y : elems)
            for (const HElem& z : elems) {
                bool lhs, rhs;
                try {
                    lhs = H->add(y, z).contains(x);
                    rhs = H->add(x, H->neg(y)).contains(z);
                } catch (const hf_error& e) {
                    rep.fail_once("H2", e.what());
                    goto h2_done;
                }
                if (lhs != rhs) {
                    rep.fail_once("H2", "x=" + pr(x) + " y=" + pr(y) + " z=" + pr(z));
                    goto h2_done;
                }
            }
h2_done:
    rep.pass_if_absent("H2");

    // commutativity of hyperaddition
    for (const HElem& x : elems)
        for (const HElem& y : elems)
            if (!(H->add(x, y) == H->add(y, x)))
                rep.fail_once("add-commutative", "x=" + pr(x) + " y=" + pr(y));
    rep.pass_if_absent("add-commutative");

    // associativity of hyperaddition (set-lifted)
    for (const HElem& x : elems)
        for (const HElem& y : elems)
            for (const HElem& z : elems) {
                HSet xy = H->add(x, y);
                HSet yz = H->add(y, z);
                HSet lhs = H->hset_add(xy, z);
                HSet rhs;
                bool first = true;
                if (!yz.is_tail) {
                    for (const HElem& w : yz.elems) {
                        HSet part = H->add(x, w);
                        rhs = first ? part : H->hset_union(rhs, part);
                        first = false;
                    }
                } else {
                    // x + tail set: use commutativity (checked above)
                    rhs = H->hset_add(yz, x);
                    first = false;
                }
                if (!(lhs == rhs)) {
                    rep.fail_once("add-associative", "x=" + pr(x) + " y=" + pr(y) + " z=" + pr(z));
                    goto assoc_done;
                }
            }
assoc_done:
    rep.pass_if_absent("add-associative");

    // (R1) multiplicative monoid on the full carrier
    for (const HElem& x : elems) {
        if (!(H->mul(x, H->one()) == x) || !(H->mul(H->one(), x) == x))
            rep.fail_once("R1-identity", "x = " + pr(x));
    }
    rep.pass_if_absent("R1-identity");
    for (const HElem& x : nonzeros)
        for (const HElem& y : nonzeros)
            for (const HElem& z : nonzeros)
                if (!(H->mul(H->mul(x, y), z) == H->mul(x, H->mul(y, z)))) {
                    rep.fail_once("R1-associative",
                                  "x=" + pr(x) + " y=" + pr(y) + " z=" + pr(z));
                    goto mulassoc_done;
                }
mulassoc_done:
    rep.pass_if_absent("R1-associative");

    // (R2) absorbing zero
    for (const HElem& x : elems)
        if (!H->mul(x, H->zero()).zero || !H->mul(H->zero(), x).zero)
            rep.fail_once("R2", "x = " + pr(x));
    rep.pass_if_absent("R2");

    // (R3) two-sided distributivity over the hypersum
    for (const HElem& a : nonzeros)
        for (const HElem& x : elems)
            for (const HElem& y : elems) {
                HSet s = H->add(x, y);
                HSet left = H->scale(a, s, true);
                if (!(left == H->add(H->mul(a, x), H->mul(a, y)))) {
                    rep.fail_once("R3-left", "a=" + pr(a) + " x=" + pr(x) + " y=" + pr(y));
                    goto dist_done;
                }
                HSet right = H->scale(a, s, false);
                if (!(right == H->add(H->mul(x, a), H->mul(y, a)))) {
                    rep.fail_once("R3-right", "a=" + pr(a) + " x=" + pr(x) + " y=" + pr(y));
                    goto dist_done;
                }
            }
dist_done:
    rep.pass_if_absent("R3-left");
    rep.pass_if_absent("R3-right");

    // multiplicative group on nonzeros
    for (const HElem& x : nonzeros) {
        try {
            HElem i = H->inv(x);
            if (!(H->mul(x, i) == H->one()) || !(H->mul(i, x) == H->one()))
                rep.fail_once("inverse", "x = " + pr(x));
        } catch (const hf_error& e) {
            rep.fail_once("inverse", e.what());
        }
    }
    rep.pass_if_absent("inverse");
    return rep;
}

// ---------------------------------------------------------------------------
// homomorphisms
// ---------------------------------------------------------------------------

struct Hom {
    enum class Kind : uint8_t { kappa, zeta, tau, incl, sigma_pow, table } kind;
    HF src, dst;
    int pow = 1;              // sigma_pow
    std::vector<HElem> tbl;   // table: image per source element, aligned with src->elements()

    std::string name() const {
        switch (kind) {
            case Kind::kappa: return "kappa";
            case Kind::zeta: return "zeta";
            case Kind::tau: return "tau";
            case Kind::incl: return "incl";
            case Kind::sigma_pow: return "sigma^" + std::to_string(pow);
            case Kind::table: return "custom";
        }
        return "?";
    }

    static Hom kappa(HF src) { return Hom{Kind::kappa, std::move(src), Hyperfield::krasner()}; }

    static Hom zeta(HF src) {
        if (src->car != Carrier::monomial) throw hf_error("zeta: source must be a monomial carrier");
        return Hom{Kind::zeta, std::move(src), Hyperfield::zmin()};
    }

    // tau: Z_min -> H^sigma, i -> T^i; needs 1 in 1+1 in the base.
    static Hom tau(HF dst) {
        if (dst->car != Carrier::monomial) throw hf_error("tau: target must be a monomial carrier");
        const HF& B = dst->base;
        if (!B->add(B->one(), B->one()).contains(B->one()))
            throw hf_error("tau: base does not satisfy 1 in 1+1");
        return Hom{Kind::tau, Hyperfield::zmin(), std::move(dst)};
    }

    // the level-0 inclusion H -> H^sigma, a -> a T^0
    static Hom incl(HF dst) {
        if (dst->car != Carrier::monomial) throw hf_error("incl: target must be a monomial carrier");
        HF src = dst->base;
        return Hom{Kind::incl, std::move(src), std::move(dst)};
    }

    // Frobenius power as an endomorphism of gf or of monomial-over-gf.
    static Hom sigma_power(HF h, int j) {
        if (h->car != Carrier::gf && !(h->car == Carrier::monomial && h->base->car == Carrier::gf))
            throw hf_error("sigma_power: needs gf or mono-over-gf carrier");
        Hom f{Kind::sigma_pow, h, h};
        f.pow = j;
        return f;
    }

    static Hom table(HF src, HF dst, std::vector<HElem> images) {
        if (!src->finite_carrier()) throw hf_error("table hom: source must be finite");
        Hom f{Kind::table, std::move(src), std::move(dst)};
        f.tbl = std::move(images);
        return f;
    }

    HElem apply(const HElem& x) const {
        src->check(x);
        switch (kind) {
            case Kind::kappa: return x.zero ? dst->zero() : dst->one();
            case Kind::zeta: return x.zero ? dst->zero() : dst->mk(1, x.lev);
            case Kind::tau: return x.zero ? dst->zero() : dst->mk(dst->base->one().a, x.lev);
            case Kind::incl: return x.zero ? dst->zero() : dst->mk(x.a, 0);
            case Kind::sigma_pow: {
                if (x.zero) return x;
                if (src->car == Carrier::gf)
                    return src->mk(src->F->frob(x.a, pow), 0);
                int c = src->base->F->frob(x.a, pow);
                return src->mk(c, x.lev);
            }
            case Kind::table: {
                auto es = src->elements();
                for (size_t i = 0; i < es.size(); ++i)
                    if (es[i] == x) return tbl.at(i);
                throw hf_error("table hom: element not found");
            }
        }
        return dst->zero();
    }

private:
    Hom(Kind k, HF s, HF d) : kind(k), src(std::move(s)), dst(std::move(d)) {}
};

// f(0)=0, f(1)=1, multiplicativity, and f(x+y) subset of f(x)+f(y) on all
// pairs from the (windowed) carrier.
inline Report hom_check(const Hom& f, int budget = 2) {
    Report rep;
    const HF& S = f.src;
    const HF& D = f.dst;
    rep.add("f(0)=0", f.apply(S->zero()).zero);
    rep.add("f(1)=1", f.apply(S->one()) == D->one());
    auto elems = S->sample_window(-budget, budget);
    for (const HElem& x : elems)
        for (const HElem& y : elems) {
            if (!x.zero && !y.zero && !(f.apply(S->mul(x, y)) == D->mul(f.apply(x), f.apply(y))))
                rep.fail_once("multiplicative", "x=" + S->print(x) + " y=" + S->print(y));
            HSet s = S->add(x, y);
            HSet img = D->add(f.apply(x), f.apply(y));
            std::vector<HElem> samples = s.elems;
            if (s.is_tail) {
                if (s.has_zero) samples.push_back(S->zero());
                // two representatives from the tail
                for (int dl = 1; dl <= 2; ++dl) {
                    if (S->car == Carrier::zmin) samples.push_back(S->mk(1, s.lev + dl));
                    else samples.push_back(S->mk(S->base->one().a, s.lev + dl));
                }
            }
            for (const HElem& e : samples)
                if (!img.contains(f.apply(e)))
                    rep.fail_once("additive", "x=" + S->print(x) + " y=" + S->print(y) +
                                                  " element " + S->print(e));
        }
    rep.pass_if_absent("multiplicative");
    rep.pass_if_absent("additive");
    return rep;
}

// The Frobenius automorphism of GF(p^k), verified on construction.
inline Automorphism frobenius(int p, int k) {
    auto tab = GFTable::get(p, k); // validates p prime and p^k <= 256
    (void)tab;
    return Automorphism::frobenius_pow(1);
}

// Rebuild any finite instance as an explicit-table instance (for mutation
// experiments against the axiom checker).
inline Hyperfield::CustomTables to_custom_tables(const HF& H) {
    if (!H->finite_carrier()) throw hf_error("to_custom_tables: finite carriers only");
    Hyperfield::CustomTables t;
    auto nz = H->nonzero_elements();
    t.n = (int)nz.size();
    t.names.resize(t.n + 1);
    t.names[0] = H->print(H->zero());
    auto code_of = [&](const HElem& x) -> int {
        if (x.zero) return 0;
        for (int i = 0; i < (int)nz.size(); ++i)
            if (nz[i] == x) return i + 1;
        throw hf_error("to_custom_tables: element not found");
    };
    for (int i = 0; i < t.n; ++i) t.names[i + 1] = H->print(nz[i]);
    t.one = code_of(H->one());
    t.mul.assign(t.n + 1, std::vector<int>(t.n + 1, 0));
    t.add.assign(t.n + 1, std::vector<std::vector<int>>(t.n + 1));
    auto all = H->elements();
    for (const HElem& x : all)
        for (const HElem& y : all) {
            int cx = code_of(x), cy = code_of(y);
            t.mul[cx][cy] = code_of(H->mul(x, y));
            for (const HElem& e : H->add(x, y).elems) t.add[cx][cy].push_back(code_of(e));
        }
    return t;
}

} // namespace skewmat
