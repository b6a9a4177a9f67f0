#pragma once

// Skew hyperfields: multivalued addition, single-valued multiplication.
//
// Carriers implemented: the Krasner hyperfield {0,1}, the sign hyperfield,
// Z_min (tropical integers), finite fields GF(p^k) viewed as hyperfields,
// the 7-element dihedral skew hyperfield D3, the skew hyperfield of
// monomials H(T,sigma,min) over a finite base, and ad-hoc finite carriers
// given by explicit tables (used to probe the axiom checker).
//
// Hypersums that are infinite (Z_min and monomial carriers) are kept
// symbolic: a LevelTail set records a finite head at one level plus
// "every element of larger level".

#include "skewmat/gf.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace skewmat {

struct hf_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Carrier : uint8_t { krasner, sign, zmin, gf, d3, monomial, custom };

class Hyperfield;
using HF = std::shared_ptr<const Hyperfield>;

// One element of a hyperfield. `a` is a carrier-specific code for the
// nonzero payload; `lev` is the Z_min value or the monomial T-level.
struct HElem {
    uint64_t key = 0; // structural id of the owning hyperfield
    bool zero = true;
    int32_t a = 0;
    int32_t lev = 0;

    friend bool operator==(const HElem& x, const HElem& y) {
        if (x.key != y.key) return false;
        if (x.zero || y.zero) return x.zero == y.zero;
        return x.a == y.a && x.lev == y.lev;
    }
    friend bool operator!=(const HElem& x, const HElem& y) { return !(x == y); }
    friend bool operator<(const HElem& x, const HElem& y) {
        return std::tie(x.zero, x.lev, x.a) < std::tie(y.zero, y.lev, y.a);
    }
};

// Result of a hyperaddition. Either an explicit finite set, or a LevelTail:
// { nonzero head elements at level `lev` } u { 0 if has_zero }
//   u { every nonzero carrier element of level > lev }.
struct HSet {
    bool is_tail = false;
    std::vector<HElem> elems; // finite: everything; tail: the head (nonzero, at lev)
    bool has_zero = false;    // tail only
    int32_t lev = 0;          // tail only

    void normalize() {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    }
    bool contains(const HElem& x) const {
        if (!is_tail) return std::find(elems.begin(), elems.end(), x) != elems.end();
        if (x.zero) return has_zero;
        if (x.lev == lev) return std::find(elems.begin(), elems.end(), x) != elems.end();
        return x.lev > lev;
    }
    friend bool operator==(const HSet& s, const HSet& t) {
        if (s.is_tail != t.is_tail) return false;
        if (s.is_tail && (s.lev != t.lev || s.has_zero != t.has_zero)) return false;
        return s.elems == t.elems;
    }
};

// An automorphism of a hyperfield carrier: identity, a Frobenius power on
// GF(p^k), or an explicit permutation of a finite carrier's nonzero codes.
struct Automorphism {
    enum class Kind : uint8_t { identity, frob, table } kind = Kind::identity;
    int pow = 1;                // frob: x -> x^(p^pow)
    std::vector<int32_t> perm;  // table: new code per nonzero code
    std::vector<int32_t> iperm; // inverse permutation

    static Automorphism identity() { return {}; }
    static Automorphism frobenius_pow(int j) {
        Automorphism s;
        s.kind = Kind::frob;
        s.pow = j;
        return s;
    }
};

class Hyperfield : public std::enable_shared_from_this<Hyperfield> {
public:
    Carrier car;
    std::string name;
    uint64_t key = 0;

    // gf payload
    std::shared_ptr<const GFTable> F;
    // monomial payload
    HF base;
    Automorphism sigma;
    bool max_variant = false; // constructor stub only: hyperaddition unimplemented
    // custom payload: codes 1..n for nonzero elements, 0 unused
    struct CustomTables {
        int n = 0; // number of nonzero elements
        int one = 1;
        std::vector<std::string> names;            // size n+1, names[0] = zero
        std::vector<std::vector<int>> mul;         // (n+1)x(n+1)
        std::vector<std::vector<std::vector<int>>> add; // sets of codes, 0 = zero
    };
    std::shared_ptr<CustomTables> custom_t;

    // ---- constructors -------------------------------------------------

    static HF krasner() { return cached("krasner", [] { return build(Carrier::krasner, "krasner"); }); }
    static HF sign_hf() { return cached("sign", [] { return build(Carrier::sign, "sign"); }); }
    static HF zmin() { return cached("zmin", [] { return build(Carrier::zmin, "zmin"); }); }
    static HF d3() { return cached("d3", [] { return build(Carrier::d3, "d3"); }); }

    static HF gf(int p, int k) {
        std::string nm = "gf:" + std::to_string(p) + ":" + std::to_string(k);
        return cached(nm, [&] {
            auto h = build(Carrier::gf, nm);
            h->F = GFTable::get(p, k);
            return h;
        });
    }

    static HF gf_with_modulus(int p, int k, std::vector<int> mod) {
        auto tab = GFTable::make(p, k, std::move(mod));
        std::string nm = "gf:" + std::to_string(p) + ":" + std::to_string(k) + ":mod";
        for (int c : tab->modulus) nm += "." + std::to_string(c);
        auto h = build(Carrier::gf, nm);
        h->F = tab;
        return h;
    }

    // H(T, sigma, min). The automorphism is verified before use.
    static HF monomial(HF base, Automorphism sig, bool verify = true);
    // H(T, sigma, max): carrier and multiplication only; hyperaddition throws.
    static HF monomial_max(HF base, Automorphism sig, bool verify = true);

    static HF custom(std::string tag, CustomTables t) {
        auto h = build(Carrier::custom, "custom:" + std::move(tag));
        h->custom_t = std::make_shared<CustomTables>(std::move(t));
        return h;
    }

    // Spec strings: krasner | sign | zmin | d3 | gf:<p>:<k> | mono:gf:<p>:<k>:frob
    static HF parse_spec(const std::string& s);

    // ---- basic structure ----------------------------------------------

    HElem zero() const { return HElem{key, true, 0, 0}; }
    HElem one() const {
        switch (car) {
            case Carrier::krasner: return mk(1, 0);
            case Carrier::sign: return mk(1, 0);
            case Carrier::zmin: return mk(1, 0); // the integer 0
            case Carrier::gf: return mk(1, 0);
            case Carrier::d3: return mk(0, 0); // d0
            case Carrier::monomial: return mk(base->one().a, 0); // 1*T^0
            case Carrier::custom: return mk(custom_t->one, 0);
        }
        return zero();
    }
    bool is_zero(const HElem& x) const {
        check(x);
        return x.zero;
    }
    bool finite_carrier() const {
        return car != Carrier::zmin && car != Carrier::monomial;
    }
    bool commutative() const {
        switch (car) {
            case Carrier::d3: return false;
            case Carrier::monomial:
                return base->commutative() && sigma.kind == Automorphism::Kind::identity;
            case Carrier::custom: {
                for (int x = 0; x <= custom_t->n; ++x)
                    for (int y = 0; y <= custom_t->n; ++y)
                        if (custom_t->mul[x][y] != custom_t->mul[y][x]) return false;
                return true;
            }
            default: return true;
        }
    }

    // All elements of a finite carrier, zero first.
    std::vector<HElem> elements() const {
        if (!finite_carrier()) throw hf_error(name + ": carrier is infinite");
        std::vector<HElem> out{zero()};
        for (const HElem& x : nonzero_elements()) out.push_back(x);
        return out;
    }
    std::vector<HElem> nonzero_elements() const {
        std::vector<HElem> out;
        switch (car) {
            case Carrier::krasner: out = {mk(1, 0)}; break;
            case Carrier::sign: out = {mk(1, 0), mk(2, 0)}; break;
            case Carrier::gf:
                for (int i = 1; i < F->q; ++i) out.push_back(mk(i, 0));
                break;
            case Carrier::d3:
                for (int i = 0; i < 6; ++i) out.push_back(mk(i, 0));
                break;
            case Carrier::custom:
                for (int i = 1; i <= custom_t->n; ++i) out.push_back(mk(i, 0));
                break;
            default: throw hf_error(name + ": carrier is infinite");
        }
        return out;
    }

    // Elements with levels in [lo, hi] plus zero; whole carrier when finite.
    std::vector<HElem> sample_window(int lo, int hi) const {
        if (finite_carrier()) return elements();
        std::vector<HElem> out{zero()};
        if (car == Carrier::zmin) {
            for (int v = lo; v <= hi; ++v) out.push_back(mk(1, v));
        } else {
            for (int v = lo; v <= hi; ++v)
                for (const HElem& c : base->nonzero_elements()) out.push_back(mk(c.a, v));
        }
        return out;
    }

    // ---- the four operations -------------------------------------------

    HSet add(const HElem& x, const HElem& y) const;
    HElem mul(const HElem& x, const HElem& y) const;
    HElem neg(const HElem& x) const;
    HElem inv(const HElem& x) const;

    // x * s or s * x for every s in a hyperset.
    HSet scale(const HElem& x, const HSet& s, bool on_left) const;

    // Set-lifted hyperaddition: acc (+) {t}.
    HSet hset_add(const HSet& acc, const HElem& t) const;
    HSet hset_union(const HSet& s, const HSet& t) const;

    // n-ary hypersum membership. For monomial/Z_min carriers and target 0 the
    // minimum-level rule is used; everything else folds binary hypersums.
    bool nary_contains(const std::vector<HElem>& terms, const HElem& target) const;
    // The fold route, exposed so tests can cross-check the shortcut.
    HSet nary_sum(const std::vector<HElem>& terms) const;

    // sigma^j applied to a base element code of a monomial carrier,
    // or to an element of this carrier when it has a registered automorphism.
    HElem apply_auto(const Automorphism& s, const HElem& x, int j = 1) const;

    // ---- literals ------------------------------------------------------

    std::string print(const HElem& x) const;
    HElem parse(const std::string& s) const;

    HElem mk(int32_t a, int32_t lev) const { return HElem{key, false, a, lev}; }
    void check(const HElem& x) const {
        if (x.key != key) throw hf_error(name + ": element belongs to a different carrier");
    }

private:
    static std::shared_ptr<Hyperfield> build(Carrier c, std::string nm) {
        auto h = std::make_shared<Hyperfield>();
        h->car = c;
        h->name = std::move(nm);
        h->key = fnv(h->name);
        return h;
    }
    static HF cached(const std::string& nm, const std::function<std::shared_ptr<Hyperfield>()>& f) {
        static std::map<std::string, HF> cache;
        static std::mutex mtx;
        std::lock_guard<std::mutex> lock(mtx);
        auto& slot = cache[nm];
        if (!slot) slot = f();
        return slot;
    }
    static uint64_t fnv(const std::string& s) {
        uint64_t h = 1469598103934665603ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return h;
    }
    int auto_order(const Automorphism& s) const;

public:
    Hyperfield() = default;
};

// ---------------------------------------------------------------------------
// operations
// ---------------------------------------------------------------------------

inline HSet Hyperfield::add(const HElem& x, const HElem& y) const {
    check(x);
    check(y);
    HSet s;
    if (car == Carrier::custom) {
        // custom tables cover the zero row/column too, so mutations there
        // stay observable to the axiom checker
        for (int code : custom_t->add[x.zero ? 0 : x.a][y.zero ? 0 : y.a])
            s.elems.push_back(code == 0 ? zero() : mk(code, 0));
        s.normalize();
        if (s.elems.empty()) throw hf_error(name + ": empty hypersum cell");
        return s;
    }
    if (x.zero) { s.elems = {y}; return s; }
    if (y.zero) { s.elems = {x}; return s; }
    switch (car) {
        case Carrier::krasner:
            if (x == y) s.elems = {zero(), one()};
            else s.elems = {one()};
            break;
        case Carrier::sign:
            if (x == y) s.elems = {x};
            else s.elems = {zero(), mk(1, 0), mk(2, 0)};
            break;
        case Carrier::gf: {
            int r = F->add(x.a, y.a);
            s.elems = {r == 0 ? zero() : mk(r, 0)};
            break;
        }
        case Carrier::d3: {
            // x + x = D3 u {0}; otherwise x + y is the coset x.<x^{-1}y>,
            // the unique coset of a cyclic subgroup containing both x and y.
            // (The only hyperaddition completing the dihedral product to a
            // skew hyperfield with these hypersum sizes; -1 = 1 here since
            // the dihedral group has trivial center.)
            if (x == y) {
                s.elems = {zero()};
                for (int t = 0; t < 6; ++t) s.elems.push_back(mk(t, 0));
                break;
            }
            HElem z = mul(inv(x), y);
            if (z.a % 2 == 1) { // reflection: <z> = {1, z}
                s.elems = {x, y};
            } else { // rotation: <z> = {1, d2, d4}
                s.elems = {x, mul(x, mk(2, 0)), mul(x, mk(4, 0))};
            }
            break;
        }
        case Carrier::zmin: {
            if (x.lev != y.lev) {
                s.elems = {x.lev < y.lev ? x : y};
            } else {
                s.is_tail = true;
                s.lev = x.lev;
                s.elems = {x};
                s.has_zero = true;
            }
            break;
        }
        case Carrier::monomial: {
            if (max_variant) throw hf_error(name + ": hyperaddition of the max variant is not implemented");
            if (x.lev < y.lev) { s.elems = {x}; break; }
            if (x.lev > y.lev) { s.elems = {y}; break; }
            HElem bx = base->mk(x.a, 0), by = base->mk(y.a, 0);
            HSet bs = base->add(bx, by);
            bool cancels = bs.contains(base->zero());
            if (!cancels) {
                for (const HElem& c : bs.elems)
                    if (!c.zero) s.elems.push_back(mk(c.a, x.lev));
            } else {
                s.is_tail = true;
                s.lev = x.lev;
                s.has_zero = true;
                for (const HElem& c : bs.elems)
                    if (!c.zero) s.elems.push_back(mk(c.a, x.lev));
            }
            break;
        }
        case Carrier::custom: break; // handled above
    }
    s.normalize();
    if (!s.is_tail && s.elems.empty()) throw hf_error(name + ": empty hypersum (broken tables)");
    return s;
}

inline HElem Hyperfield::mul(const HElem& x, const HElem& y) const {
    check(x);
    check(y);
    if (car == Carrier::custom) {
        int r = custom_t->mul[x.zero ? 0 : x.a][y.zero ? 0 : y.a];
        return r == 0 ? zero() : mk(r, 0);
    }
    if (x.zero || y.zero) return zero();
    switch (car) {
        case Carrier::krasner: return one();
        case Carrier::sign: return x.a == y.a ? mk(1, 0) : mk(2, 0);
        case Carrier::gf: return mk(F->mul(x.a, y.a), 0);
        case Carrier::zmin: return mk(1, x.lev + y.lev);
        case Carrier::d3: {
            int i = x.a, j = y.a;
            int r = (i % 2 == 0) ? (i + j) % 6 : ((i - j) % 6 + 6) % 6;
            return mk(r, 0);
        }
        case Carrier::monomial: {
            HElem tb = base->apply_auto(sigma, base->mk(y.a, 0), x.lev);
            HElem c = base->mul(base->mk(x.a, 0), tb);
            if (c.zero) throw hf_error(name + ": base product of nonzeros is zero");
            return mk(c.a, x.lev + y.lev);
        }
        case Carrier::custom: break; // handled above
    }
    return zero();
}

inline HElem Hyperfield::neg(const HElem& x) const {
    check(x);
    if (x.zero) return x;
    switch (car) {
        case Carrier::krasner: return x;
        case Carrier::sign: return mk(x.a == 1 ? 2 : 1, 0);
        case Carrier::gf: return mk(F->neg(x.a), 0);
        case Carrier::zmin: return x;
        case Carrier::d3: return x; // 0 in x + x, uniquely
        case Carrier::monomial: {
            HElem nb = base->neg(base->mk(x.a, 0));
            return mk(nb.a, x.lev);
        }
        case Carrier::custom: {
            // unique y with 0 in x (+) y
            std::optional<HElem> found;
            for (const HElem& y : nonzero_elements()) {
                if (add(x, y).contains(zero())) {
                    if (found) throw hf_error(name + ": multiple additive inverses for " + print(x));
                    found = y;
                }
            }
            if (!found) throw hf_error(name + ": no additive inverse for " + print(x));
            return *found;
        }
    }
    return x;
}

inline HElem Hyperfield::inv(const HElem& x) const {
    check(x);
    if (x.zero) throw hf_error(name + ": multiplicative inverse of zero");
    switch (car) {
        case Carrier::krasner: return x;
        case Carrier::sign: return x;
        case Carrier::gf: return mk(F->inv(x.a), 0);
        case Carrier::zmin: return mk(1, -x.lev);
        case Carrier::d3: return x.a % 2 == 0 ? mk((6 - x.a) % 6, 0) : x;
        case Carrier::monomial: {
            HElem bi = base->inv(base->mk(x.a, 0));
            HElem r = base->apply_auto(sigma, bi, -x.lev);
            return mk(r.a, -x.lev);
        }
        case Carrier::custom: {
            for (const HElem& y : nonzero_elements())
                if (mul(x, y) == one() && mul(y, x) == one()) return y;
            throw hf_error(name + ": no multiplicative inverse for " + print(x));
        }
    }
    return x;
}

inline int Hyperfield::auto_order(const Automorphism& s) const {
    switch (s.kind) {
        case Automorphism::Kind::identity: return 1;
        case Automorphism::Kind::frob: {
            if (car != Carrier::gf) throw hf_error(name + ": frobenius automorphism needs a gf carrier");
            return F->k;
        }
        case Automorphism::Kind::table: {
            int n = (int)s.perm.size();
            std::vector<int> cur(n);
            for (int i = 0; i < n; ++i) cur[i] = i;
            for (int o = 1;; ++o) {
                for (int i = 0; i < n; ++i) cur[i] = s.perm[cur[i]];
                bool id = true;
                for (int i = 0; i < n; ++i)
                    if (cur[i] != i) { id = false; break; }
                if (id) return o;
                if (o > n + 1) throw hf_error(name + ": automorphism table is not a permutation");
            }
        }
    }
    return 1;
}

inline HElem Hyperfield::apply_auto(const Automorphism& s, const HElem& x, int j) const {
    check(x);
    if (x.zero || s.kind == Automorphism::Kind::identity || j == 0) return x;
    if (s.kind == Automorphism::Kind::frob) {
        if (car != Carrier::gf) throw hf_error(name + ": frobenius automorphism needs a gf carrier");
        return mk(F->frob(x.a, s.pow * j), 0);
    }
    int o = auto_order(s);
    int r = ((j % o) + o) % o;
    int code = x.a;
    for (int t = 0; t < r; ++t) code = s.perm[code];
    return mk(code, x.lev);
}

inline HSet Hyperfield::scale(const HElem& x, const HSet& s, bool on_left) const {
    check(x);
    HSet out;
    if (x.zero) {
        out.elems = {zero()};
        return out;
    }
    auto prod = [&](const HElem& e) { return on_left ? mul(x, e) : mul(e, x); };
    out.is_tail = s.is_tail;
    out.has_zero = s.has_zero;
    if (s.is_tail) out.lev = s.lev + x.lev; // nonzero x permutes each level's coefficients
    for (const HElem& e : s.elems) out.elems.push_back(prod(e));
    out.normalize();
    return out;
}

inline HSet Hyperfield::hset_union(const HSet& s, const HSet& t) const {
    if (!s.is_tail && !t.is_tail) {
        HSet u = s;
        u.elems.insert(u.elems.end(), t.elems.begin(), t.elems.end());
        u.normalize();
        return u;
    }
    // At least one tail; merge into the lower-level tail.
    const HSet& a = (s.is_tail && (!t.is_tail || s.lev <= t.lev)) ? s : t;
    const HSet& b = (&a == &s) ? t : s;
    HSet u;
    u.is_tail = true;
    u.lev = a.lev;
    u.has_zero = a.has_zero || (b.is_tail && b.has_zero);
    u.elems = a.elems;
    for (const HElem& e : b.elems) {
        if (e.zero) { u.has_zero = true; continue; }
        if (e.lev == u.lev) u.elems.push_back(e);
        else if (e.lev < u.lev) throw hf_error(name + ": union would drop below tail level");
        // levels above u.lev are absorbed by the tail
    }
    if (b.is_tail) {
        if (b.lev < u.lev) throw hf_error(name + ": union would drop below tail level");
        // b's head lies at level >= u.lev; levels > u.lev are absorbed above
    }
    u.normalize();
    return u;
}

inline HSet Hyperfield::hset_add(const HSet& acc, const HElem& t) const {
    check(t);
    if (!acc.is_tail) {
        HSet out;
        bool first = true;
        for (const HElem& s : acc.elems) {
            HSet part = add(s, t);
            out = first ? part : hset_union(out, part);
            first = false;
        }
        return out;
    }
    if (t.zero) return acc;
    if (t.lev < acc.lev) {
        HSet out;
        out.elems = {t};
        return out;
    }
    if (t.lev == acc.lev) {
        // head elements add to t; zero and every tail element (level > lev)
        // both contribute exactly {t}
        HSet out;
        out.elems = {t};
        for (const HElem& s : acc.elems) out = hset_union(out, add(s, t));
        return out;
    }
    // t.lev > acc.lev: head survives; tail absorbs t and produces 0 via the
    // coefficient matching t's negation.
    HSet out = acc;
    out.has_zero = true;
    return out;
}

inline HSet Hyperfield::nary_sum(const std::vector<HElem>& terms) const {
    HSet acc;
    acc.elems = {zero()};
    for (const HElem& t : terms) acc = hset_add(acc, t);
    return acc;
}

inline bool Hyperfield::nary_contains(const std::vector<HElem>& terms, const HElem& target) const {
    check(target);
    for (const HElem& t : terms) check(t);
    if (terms.empty()) {
        if (!target.zero) throw hf_error(name + ": empty hypersum only contains zero");
        return true;
    }
    if ((car == Carrier::monomial || car == Carrier::zmin) && target.zero) {
        // minimum-level rule
        bool all_zero = true;
        int32_t m = 0;
        for (const HElem& t : terms)
            if (!t.zero) {
                m = all_zero ? t.lev : std::min(m, t.lev);
                all_zero = false;
            }
        if (all_zero) return true;
        if (car == Carrier::zmin) {
            int cnt = 0;
            for (const HElem& t : terms)
                if (!t.zero && t.lev == m) ++cnt;
            return cnt >= 2;
        }
        std::vector<HElem> coeffs;
        for (const HElem& t : terms)
            if (!t.zero && t.lev == m) coeffs.push_back(base->mk(t.a, 0));
        return base->nary_contains(coeffs, base->zero());
    }
    return nary_sum(terms).contains(target);
}

// ---------------------------------------------------------------------------
// monomial construction
// ---------------------------------------------------------------------------

namespace detail {

// Exhaustive automorphism check on a finite carrier: bijection on nonzeros,
// multiplicative, and compatible with hyperaddition in both directions.
inline bool automorphism_ok(const HF& H, const Automorphism& s, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (s.kind == Automorphism::Kind::identity) return true;
    if (s.kind == Automorphism::Kind::frob && H->car != Carrier::gf)
        return fail("frobenius needs a gf carrier");
    if (!H->finite_carrier()) return fail("verification requires a finite carrier");
    auto nz = H->nonzero_elements();
    if (s.kind == Automorphism::Kind::table) {
        std::set<int32_t> image;
        for (const HElem& x : nz) {
            if (x.a < 0 || x.a >= (int)s.perm.size()) return fail("table too small");
            image.insert(s.perm[x.a]);
        }
        if ((int)image.size() != (int)nz.size()) return fail("table is not a bijection");
    }
    auto ap = [&](const HElem& x) { return H->apply_auto(s, x, 1); };
    if (ap(H->one()) != H->one()) return fail("does not fix 1");
    for (const HElem& x : nz)
        for (const HElem& y : nz) {
            if (ap(H->mul(x, y)) != H->mul(ap(x), ap(y))) return fail("not multiplicative");
            HSet lhs = H->add(x, y);
            HSet img;
            img.is_tail = lhs.is_tail;
            img.has_zero = lhs.has_zero;
            img.lev = lhs.lev;
            for (const HElem& e : lhs.elems) img.elems.push_back(e.zero ? e : ap(e));
            img.normalize();
            if (!(img == H->add(ap(x), ap(y)))) return fail("not additive");
        }
    return true;
}

} // namespace detail

inline HF Hyperfield::monomial(HF base, Automorphism sig, bool verify) {
    if (!base) throw hf_error("monomial: null base");
    if (base->car == Carrier::zmin || base->car == Carrier::monomial)
        throw hf_error("monomial: base carrier must be finite");
    if (verify) {
        std::string why;
        if (!detail::automorphism_ok(base, sig, &why))
            throw hf_error("monomial: sigma is not an automorphism of " + base->name + " (" + why + ")");
    }
    std::string nm;
    if (sig.kind == Automorphism::Kind::identity) nm = "mono:" + base->name + ":id";
    else if (sig.kind == Automorphism::Kind::frob)
        nm = "mono:" + base->name + ":frob" + (sig.pow == 1 ? "" : "^" + std::to_string(sig.pow));
    else nm = "mono:" + base->name + ":table";
    auto h = build(Carrier::monomial, nm);
    h->base = std::move(base);
    h->sigma = std::move(sig);
    return h;
}

inline HF Hyperfield::monomial_max(HF base, Automorphism sig, bool verify) {
    auto h = monomial(std::move(base), std::move(sig), verify);
    auto stub = std::make_shared<Hyperfield>(*h);
    stub->name = h->name + ":max";
    stub->key = fnv(stub->name);
    stub->max_variant = true;
    return stub;
}

inline HF Hyperfield::parse_spec(const std::string& s) {
    if (s == "krasner") return krasner();
    if (s == "sign") return sign_hf();
    if (s == "zmin") return zmin();
    if (s == "d3") return d3();
    auto split = [](const std::string& str) {
        std::vector<std::string> parts;
        std::stringstream ss(str);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        return parts;
    };
    auto parts = split(s);
    try {
        if (parts.size() == 3 && parts[0] == "gf") return gf(std::stoi(parts[1]), std::stoi(parts[2]));
        if (parts.size() == 5 && parts[0] == "mono" && parts[1] == "gf" && parts[4] == "frob")
            return monomial(gf(std::stoi(parts[2]), std::stoi(parts[3])), Automorphism::frobenius_pow(1));
        if (parts.size() == 3 && parts[0] == "mono" && parts[1] == "krasner" && parts[2] == "id")
            return monomial(krasner(), Automorphism::identity());
    } catch (const std::invalid_argument&) {
        throw hf_error("unknown hyperfield spec '" + s + "'");
    }
    throw hf_error("unknown hyperfield spec '" + s + "'");
}

// ---------------------------------------------------------------------------
// literals
// ---------------------------------------------------------------------------

inline std::string Hyperfield::print(const HElem& x) const {
    check(x);
    switch (car) {
        case Carrier::krasner: return x.zero ? "0" : "1";
        case Carrier::sign: return x.zero ? "0" : (x.a == 1 ? "+" : "-");
        case Carrier::zmin: return x.zero ? "inf" : std::to_string(x.lev);
        case Carrier::gf: return x.zero ? "0" : F->print(x.a);
        case Carrier::d3: return x.zero ? "0" : "d" + std::to_string(x.a);
        case Carrier::custom: return custom_t->names[x.zero ? 0 : x.a];
        case Carrier::monomial: {
            if (x.zero) return "0";
            std::string coef = base->print(base->mk(x.a, 0));
            if (x.lev == 0) return coef;
            std::string tpart = x.lev == 1 ? "T" : "T^" + std::to_string(x.lev);
            if (coef == "1") return tpart;
            if (coef.find('+') != std::string::npos || coef.find('-') != std::string::npos)
                coef = "(" + coef + ")";
            return coef + "*" + tpart;
        }
    }
    return "?";
}

inline HElem Hyperfield::parse(const std::string& raw) const {
    std::string s;
    for (char c : raw)
        if (c != ' ') s += c;
    if (s.empty()) throw hf_error(name + ": empty element literal");
    switch (car) {
        case Carrier::krasner:
            if (s == "0") return zero();
            if (s == "1") return one();
            throw hf_error("krasner: bad literal '" + raw + "'");
        case Carrier::sign:
            if (s == "0") return zero();
            if (s == "+") return mk(1, 0);
            if (s == "-") return mk(2, 0);
            throw hf_error("sign: bad literal '" + raw + "'");
        case Carrier::zmin: {
            if (s == "inf") return zero();
            try {
                return mk(1, std::stoi(s));
            } catch (const std::exception&) {
                throw hf_error("zmin: bad literal '" + raw + "'");
            }
        }
        case Carrier::gf: {
            if (s == "0") return zero();
            int v = F->parse(s);
            return v == 0 ? zero() : mk(v, 0);
        }
        case Carrier::d3: {
            if (s == "0") return zero();
            if (s.size() == 2 && s[0] == 'd' && s[1] >= '0' && s[1] <= '5') return mk(s[1] - '0', 0);
            throw hf_error("d3: bad literal '" + raw + "'");
        }
        case Carrier::custom: {
            for (int i = 0; i <= custom_t->n; ++i)
                if (custom_t->names[i] == s) return i == 0 ? zero() : mk(i, 0);
            throw hf_error(name + ": bad literal '" + raw + "'");
        }
        case Carrier::monomial: {
            if (s == "0") return zero();
            // [coef '*'] 'T' ['^' int]   |   coef
            std::string coef_s = s;
            std::optional<int> lev;
            size_t tpos = s.rfind('T');
            if (tpos != std::string::npos && (tpos == 0 || s[tpos - 1] == '*' || s[tpos - 1] == ')')) {
                size_t cut = tpos;
                if (tpos > 0 && s[tpos - 1] == '*') cut = tpos - 1;
                coef_s = s.substr(0, cut);
                std::string rest = s.substr(tpos + 1);
                if (rest.empty()) lev = 1;
                else if (rest[0] == '^') {
                    try {
                        lev = std::stoi(rest.substr(1));
                    } catch (const std::exception&) {
                        throw hf_error(name + ": bad level in '" + raw + "'");
                    }
                } else
                    throw hf_error(name + ": bad literal '" + raw + "'");
            }
            if (!lev) lev = 0;
            if (coef_s.empty()) coef_s = "1";
            if (coef_s.size() >= 2 && coef_s.front() == '(' && coef_s.back() == ')')
                coef_s = coef_s.substr(1, coef_s.size() - 2);
            HElem c = base->parse(coef_s);
            if (c.zero) return zero();
            return mk(c.a, *lev);
        }
    }
    throw hf_error(name + ": bad literal '" + raw + "'");
}

inline std::string print_hset(const Hyperfield& H, const HSet& s) {
    std::string out = "{";
    bool first = true;
    auto emit = [&](const std::string& t) {
        if (!first) out += ", ";
        out += t;
        first = false;
    };
    if (!s.is_tail) {
        for (const HElem& e : s.elems) emit(H.print(e));
    } else {
        if (s.has_zero) emit(H.print(H.zero()));
        for (const HElem& e : s.elems) emit(H.print(e));
        emit("all of level > " + std::to_string(s.lev));
    }
    return out + "}";
}

} // namespace skewmat
