#pragma once

// Matroids with coefficients in a skew hyperfield: circuit signatures,
// quasi-Pluecker coordinates, the cryptomorphism between them, duality via
// orthogonality, push-forwards, minors, rescaling, the U(2,4) normal form,
// cross ratios, and Grassmann-Pluecker functions for commutative carriers.
//
// Left and right variants share one code path: `mulS` reverses the order of
// every product for right signatures, so all formulas below read in the
// left convention.

#include "skewmat/hyperfield_checks.hpp"
#include "skewmat/matroid.hpp"

#include <map>
#include <queue>

namespace skewmat {

struct sig_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Side : uint8_t { left, right };

inline std::string side_name(Side s) { return s == Side::left ? "left" : "right"; }

inline HElem mulS(Side side, const HF& H, const HElem& x, const HElem& y) {
    return side == Side::left ? H->mul(x, y) : H->mul(y, x);
}
// alpha with mulS(alpha, from) == to
inline HElem solve_scale(Side side, const HF& H, const HElem& from, const HElem& to) {
    return side == Side::left ? H->mul(to, H->inv(from)) : H->mul(H->inv(from), to);
}

// One projective circuit vector; entries indexed by ground position.
struct CircuitVec {
    std::vector<HElem> entries;
    Mask support = 0;
};

inline CircuitVec make_vec(const HF& H, std::vector<HElem> entries) {
    CircuitVec v;
    v.support = 0;
    for (size_t e = 0; e < entries.size(); ++e)
        if (!H->is_zero(entries[e])) v.support |= 1u << e;
    v.entries = std::move(entries);
    return v;
}

// Scales so the entry at the least support element is 1 (left scaling for
// left signatures, right scaling for right ones).
inline CircuitVec canonical_rep(Side side, const HF& H, CircuitVec v) {
    if (v.support == 0) throw sig_error("circuit vector has empty support");
    int e0 = lowest_bit(v.support);
    HElem alpha = H->inv(v.entries[e0]);
    for (auto& x : v.entries)
        if (!x.zero) x = mulS(side, H, alpha, x);
    return v;
}

struct Signature {
    Side side = Side::left;
    HF H;
    Matroid N;
    std::vector<CircuitVec> reps; // one canonical representative per circuit of N

    const CircuitVec& rep_for(Mask support) const {
        for (const auto& r : reps)
            if (r.support == support) return r;
        throw sig_error("no stored circuit with support " + N.set_str(support));
    }
    // the unique stored circuit whose support lies inside `box`
    const CircuitVec* rep_inside(Mask box) const {
        for (const auto& r : reps)
            if ((r.support & ~box) == 0) return &r;
        return nullptr;
    }
    friend bool operator==(const Signature& a, const Signature& b) {
        if (a.side != b.side || a.H->key != b.H->key || !(a.N == b.N)) return false;
        if (a.reps.size() != b.reps.size()) return false;
        for (size_t i = 0; i < a.reps.size(); ++i)
            if (a.reps[i].entries != b.reps[i].entries) return false;
        return true;
    }
};

// Builds a signature from raw vectors. Checks that supports are exactly the
// circuits of N and that vectors sharing a support are scalar multiples (C2).
inline Signature make_signature(Side side, HF H, Matroid N, const std::vector<std::vector<HElem>>& raw) {
    Signature S;
    S.side = side;
    S.H = std::move(H);
    S.N = std::move(N);
    std::map<Mask, CircuitVec> by_support;
    for (const auto& entries : raw) {
        if ((int)entries.size() != S.N.n) throw sig_error("circuit vector length differs from |E|");
        CircuitVec v = canonical_rep(side, S.H, make_vec(S.H, entries));
        auto it = by_support.find(v.support);
        if (it == by_support.end()) by_support.emplace(v.support, std::move(v));
        else if (!(it->second.entries == v.entries))
            throw sig_error("(C2) fails: vectors with support " + S.N.set_str(v.support) +
                            " are not scalar multiples");
    }
    const auto& circuits = S.N.circuits();
    for (const auto& [supp, v] : by_support)
        if (std::find(circuits.begin(), circuits.end(), supp) == circuits.end())
            throw sig_error("support " + S.N.set_str(supp) + " is not a circuit of the matroid");
    for (Mask c : circuits) {
        auto it = by_support.find(c);
        if (it == by_support.end())
            throw sig_error("no vector for circuit " + S.N.set_str(c));
        S.reps.push_back(std::move(it->second));
    }
    return S;
}

// ---------------------------------------------------------------------------
// coordinates
// ---------------------------------------------------------------------------

struct Coordinates {
    Side side = Side::left;
    HF H;
    Matroid N;
    std::map<std::pair<Mask, Mask>, HElem> val;

    const HElem& at(Mask B, Mask B2) const {
        auto it = val.find({B, B2});
        if (it == val.end())
            throw sig_error("no coordinate for pair " + N.set_str(B) + " -> " + N.set_str(B2));
        return it->second;
    }
};

// [Fa, Fb] := -X_a^{-1} X_b for the circuit X with support inside Fab.
inline Coordinates coords_from_signature(const Signature& S) {
    Coordinates C;
    C.side = S.side;
    C.H = S.H;
    C.N = S.N;
    for (auto [B, B2] : S.N.adjacent_bases()) {
        int a = lowest_bit(B & ~B2);
        int b = lowest_bit(B2 & ~B);
        const CircuitVec* X = S.rep_inside(B | B2);
        if (!X) throw sig_error("no circuit inside " + S.N.set_str(B | B2));
        HElem v = S.H->neg(mulS(S.side, S.H, S.H->inv(X->entries[a]), X->entries[b]));
        C.val[{B, B2}] = v;
    }
    return C;
}

// Rebuilds the signature determined by quasi-Pluecker style coordinates;
// throws when the coordinates are inconsistent for some circuit.
inline Signature signature_from_coords(const Coordinates& C) {
    Signature S;
    S.side = C.side;
    S.H = C.H;
    S.N = C.N;
    const HF& H = C.H;
    for (Mask circuit : C.N.circuits()) {
        int c = lowest_bit(circuit);
        Mask rest = circuit & ~(1u << c);
        Mask B = 0;
        for (Mask cand : C.N.bases)
            if ((rest & ~cand) == 0) { B = cand; break; }
        if (B == 0 && !(C.N.rank == 0))
            throw sig_error("no basis contains " + C.N.set_str(rest));
        std::vector<HElem> X(C.N.n, H->zero());
        X[c] = H->one();
        Mask m = rest;
        while (m) {
            int a = lowest_bit(m);
            m &= m - 1;
            Mask Ba = (B & ~(1u << a)) | (1u << c);
            if (!C.N.has_basis(Ba)) throw sig_error("exchange basis missing for circuit rebuild");
            X[a] = H->neg(C.at(Ba, B));
        }
        // consistency across every basis pair seeing this circuit
        for (auto [B1, B2] : C.N.adjacent_bases()) {
            Mask box = B1 | B2;
            if ((circuit & ~box) != 0) continue;
            int a = lowest_bit(B1 & ~B2);
            int b = lowest_bit(B2 & ~B1);
            if (!((circuit >> a) & 1) || !((circuit >> b) & 1)) continue;
            HElem lhs = mulS(C.side, H, H->inv(X[a]), X[b]);
            if (!(lhs == H->neg(C.at(B1, B2))))
                throw sig_error("inconsistent coordinates: circuit " + C.N.set_str(circuit) +
                                " vs pair " + C.N.set_str(B1) + " -> " + C.N.set_str(B2));
        }
        S.reps.push_back(canonical_rep(S.side, H, make_vec(H, std::move(X))));
    }
    return S;
}

// ---------------------------------------------------------------------------
// axiom checkers
// ---------------------------------------------------------------------------

// (C0)-(C2) are structural for stored signatures; (C3) is searched over all
// modular pairs, elements, and candidate elimination circuits.
inline Report check_circuit_axioms(const Signature& S) {
    Report rep;
    const HF& H = S.H;
    for (const auto& r : S.reps)
        if (r.support == 0) rep.fail_once("C0", "zero vector stored");
    rep.pass_if_absent("C0");
    rep.add("C1", true, "projective classes stored by canonical representative");
    {
        bool ok = true;
        std::set<Mask> seen;
        for (const auto& r : S.reps) ok &= seen.insert(r.support).second;
        rep.add("C2", ok, ok ? "" : "two stored classes share a support");
    }
    const auto& circuits = S.N.circuits();
    for (size_t i = 0; i < S.reps.size(); ++i)
        for (size_t j = i + 1; j < S.reps.size(); ++j) {
            if (!Matroid::modular_in(circuits, S.reps[i].support, S.reps[j].support)) continue;
            const CircuitVec& X = S.reps[i];
            Mask meet = X.support & S.reps[j].support;
            Mask m = meet;
            while (m) {
                int e = lowest_bit(m);
                m &= m - 1;
                // scale Y so that X_e = -Y_e
                HElem alpha = solve_scale(S.side, H, S.reps[j].entries[e], H->neg(X.entries[e]));
                std::vector<HElem> Y(S.N.n, H->zero());
                for (int g = 0; g < S.N.n; ++g)
                    if (!S.reps[j].entries[g].zero) Y[g] = mulS(S.side, H, alpha, S.reps[j].entries[g]);
                Mask box = (X.support | S.reps[j].support) & ~(1u << e);
                bool found = false;
                std::vector<HSet> sums(S.N.n);
                for (int g = 0; g < S.N.n; ++g) sums[g] = H->add(X.entries[g], Y[g]);
                for (const auto& Zrep : S.reps) {
                    if ((Zrep.support & ~box) != 0) continue;
                    // zero positions of Z inside the union must admit 0
                    bool zeros_ok = true;
                    Mask need_zero = box & ~Zrep.support;
                    Mask t = need_zero | (1u << e);
                    while (t) {
                        int g = lowest_bit(t);
                        t &= t - 1;
                        if (!sums[g].contains(H->zero())) { zeros_ok = false; break; }
                    }
                    if (!zeros_ok) continue;
                    // candidate scalings beta with beta.Z in X (+) Y
                    int g0 = -1;
                    for (int g = 0; g < S.N.n; ++g)
                        if (((Zrep.support >> g) & 1) && !sums[g].is_tail) { g0 = g; break; }
                    if (g0 < 0) { found = true; break; } // all tail sums: large-level beta works
                    for (const HElem& s : sums[g0].elems) {
                        if (s.zero) continue;
                        HElem beta = solve_scale(S.side, H, Zrep.entries[g0], s);
                        bool all = true;
                        Mask zm = Zrep.support;
                        while (zm) {
                            int g = lowest_bit(zm);
                            zm &= zm - 1;
                            if (!sums[g].contains(mulS(S.side, H, beta, Zrep.entries[g]))) {
                                all = false;
                                break;
                            }
                        }
                        if (all) { found = true; break; }
                    }
                    if (found) break;
                }
                if (!found)
                    rep.fail_once("C3", "X=" + S.N.set_str(X.support) + " Y=" +
                                            S.N.set_str(S.reps[j].support) + " e=" + S.N.labels[e] +
                                            " (Y scaled by " + H->print(alpha) + ")");
            }
        }
    rep.pass_if_absent("C3");
    return rep;
}

namespace detail {

struct TupleIter {
    // all (F, a_1..a_t) with F a subset mask of given size and a_i distinct, outside F
    const Matroid& N;
    int fsize, t;
    template <typename Fn>
    void run(Fn&& fn) const {
        for (Mask F = 0; F <= N.full_mask(); ++F) {
            if (popcount(F) != fsize) continue;
            std::vector<int> outside;
            for (int e = 0; e < N.n; ++e)
                if (!((F >> e) & 1)) outside.push_back(e);
            std::vector<int> pick(t);
            std::function<void(int, unsigned)> rec = [&](int d, unsigned used) {
                if (d == t) {
                    fn(F, pick);
                    return;
                }
                for (size_t i = 0; i < outside.size(); ++i) {
                    if (used & (1u << i)) continue;
                    pick[d] = outside[i];
                    rec(d + 1, used | (1u << i));
                }
            };
            rec(0, 0);
        }
    }
};

} // namespace detail

// Quasi-Pluecker axioms (P0)-(P4).
inline Report check_plucker(const Coordinates& C) {
    Report rep;
    for (const char* nm : {"P0", "P1", "P2", "P3", "P4"}) rep.add(nm, true);
    const HF& H = C.H;
    const Matroid& N = C.N;
    Side sd = C.side;
    HElem one = H->one(), mone = H->neg(H->one());
    auto B = [&](Mask F, std::initializer_list<int> es) {
        Mask m = F;
        for (int e : es) m |= 1u << e;
        return m;
    };
    auto isb = [&](Mask m) { return N.has_basis(m); };
    for (auto [B1, B2] : N.adjacent_bases())
        if (!(mulS(sd, H, C.at(B1, B2), C.at(B2, B1)) == one))
            rep.fail_once("P0", N.set_str(B1) + " / " + N.set_str(B2));
    if (N.rank >= 2)
        detail::TupleIter{N, N.rank - 2, 3}.run([&](Mask F, const std::vector<int>& v) {
            int a = v[0], b = v[1], c = v[2];
            Mask Fab = B(F, {a, b}), Fac = B(F, {a, c}), Fbc = B(F, {b, c});
            if (!isb(Fab) || !isb(Fac) || !isb(Fbc)) return;
            HElem p = mulS(sd, H, mulS(sd, H, C.at(Fac, Fbc), C.at(Fab, Fac)), C.at(Fbc, Fab));
            if (!(p == mone))
                rep.fail_once("P1", "F=" + N.set_str(F) + " a=" + N.labels[a] + " b=" + N.labels[b] +
                                        " c=" + N.labels[c]);
        });
    if (N.rank >= 1)
        detail::TupleIter{N, N.rank - 1, 3}.run([&](Mask F, const std::vector<int>& v) {
            int a = v[0], b = v[1], c = v[2];
            Mask Fa = B(F, {a}), Fb = B(F, {b}), Fc = B(F, {c});
            if (!isb(Fa) || !isb(Fb) || !isb(Fc)) return;
            HElem p = mulS(sd, H, mulS(sd, H, C.at(Fa, Fb), C.at(Fb, Fc)), C.at(Fc, Fa));
            if (!(p == one))
                rep.fail_once("P2", "F=" + N.set_str(F) + " a=" + N.labels[a] + " b=" + N.labels[b] +
                                        " c=" + N.labels[c]);
        });
    if (N.rank >= 2)
        detail::TupleIter{N, N.rank - 2, 4}.run([&](Mask F, const std::vector<int>& v) {
            int a = v[0], b = v[1], c = v[2], d = v[3];
            Mask Fac = B(F, {a, c}), Fad = B(F, {a, d}), Fbc = B(F, {b, c}), Fbd = B(F, {b, d});
            if (!isb(Fac) || !isb(Fad) || !isb(Fbc) || !isb(Fbd)) return;
            Mask Fab = B(F, {a, b}), Fcd = B(F, {c, d});
            std::string at = "F=" + N.set_str(F) + " a=" + N.labels[a] + " b=" + N.labels[b] +
                             " c=" + N.labels[c] + " d=" + N.labels[d];
            if (!isb(Fab) || !isb(Fcd)) {
                if (!(C.at(Fac, Fbc) == C.at(Fad, Fbd))) rep.fail_once("P3", at);
            } else {
                HSet s = H->add(mulS(sd, H, C.at(Fbd, Fab), C.at(Fac, Fcd)),
                                mulS(sd, H, C.at(Fad, Fab), C.at(Fbc, Fcd)));
                if (!s.contains(one)) rep.fail_once("P4", at);
            }
        });
    return rep;
}

// Coordinate axioms (CC0)-(CC2) of the signature/coordinate cryptomorphism.
inline Report check_cc_axioms(const Coordinates& C) {
    Report rep;
    for (const char* nm : {"CC0", "CC1", "CC2"}) rep.add(nm, true);
    const HF& H = C.H;
    const Matroid& N = C.N;
    Side sd = C.side;
    HElem one = H->one(), mone = H->neg(H->one());
    for (auto [B1, B2] : N.adjacent_bases())
        if (!(mulS(sd, H, C.at(B1, B2), C.at(B2, B1)) == one))
            rep.fail_once("CC0", N.set_str(B1) + " / " + N.set_str(B2));
    if (N.rank >= 2)
        detail::TupleIter{N, N.rank - 2, 3}.run([&](Mask F, const std::vector<int>& v) {
            int a = v[0], b = v[1], c = v[2];
            Mask Fab = F | (1u << a) | (1u << b), Fac = F | (1u << a) | (1u << c),
                 Fbc = F | (1u << b) | (1u << c);
            if (!N.has_basis(Fab) || !N.has_basis(Fac) || !N.has_basis(Fbc)) return;
            HElem p = mulS(sd, H, mulS(sd, H, C.at(Fac, Fbc), C.at(Fab, Fac)), C.at(Fbc, Fab));
            if (!(p == mone)) rep.fail_once("CC1", "F=" + N.set_str(F));
        });
    if (N.rank >= 2)
        detail::TupleIter{N, N.rank - 2, 4}.run([&](Mask F, const std::vector<int>& v) {
            int a = v[0], b = v[1], c = v[2], d = v[3];
            Mask Fac = F | (1u << a) | (1u << c), Fad = F | (1u << a) | (1u << d),
                 Fbc = F | (1u << b) | (1u << c), Fbd = F | (1u << b) | (1u << d),
                 Fab = F | (1u << a) | (1u << b);
            if (!N.has_basis(Fac) || !N.has_basis(Fad) || !N.has_basis(Fbc) || !N.has_basis(Fbd))
                return;
            if (N.has_basis(Fab)) return;
            if (!(C.at(Fac, Fbc) == C.at(Fad, Fbd)))
                rep.fail_once("CC2", "F=" + N.set_str(F) + " a=" + N.labels[a] + " b=" + N.labels[b]);
        });
    return rep;
}

// ---------------------------------------------------------------------------
// duality and orthogonality
// ---------------------------------------------------------------------------

// [B, B']* := -[E\B, E\B'] on adjacent bases of N*, with the side flipped.
inline Coordinates dual_coords(const Coordinates& C) {
    Coordinates D;
    D.side = C.side == Side::left ? Side::right : Side::left;
    D.H = C.H;
    D.N = C.N.dual();
    Mask full = C.N.full_mask();
    for (auto [B1, B2] : D.N.adjacent_bases())
        D.val[{B1, B2}] = C.H->neg(C.at(full & ~B1, full & ~B2));
    return D;
}

inline bool perp(const HF& H, const std::vector<HElem>& X, const std::vector<HElem>& Y) {
    std::vector<HElem> terms;
    for (size_t e = 0; e < X.size(); ++e) terms.push_back(H->mul(X[e], Y[e]));
    return H->nary_contains(terms, H->zero());
}

inline bool perp_k(const Signature& C, const Signature& D, int k) {
    if (C.H->key != D.H->key) throw sig_error("orthogonality: different hyperfields");
    if (C.N.n != D.N.n) throw sig_error("orthogonality: different ground sets");
    for (const auto& X : C.reps)
        for (const auto& Y : D.reps)
            if (popcount(X.support & Y.support) <= k && !perp(C.H, X.entries, Y.entries))
                return false;
    return true;
}

inline Report orthogonality_check(const Signature& C, const Signature& D, int k) {
    Report rep;
    if (C.H->key != D.H->key) throw sig_error("orthogonality: different hyperfields");
    if (C.N.n != D.N.n) throw sig_error("orthogonality: different ground sets");
    rep.add("underlying-is-dual", D.N == C.N.dual());
    std::string tag = "perp_" + std::to_string(k);
    for (const auto& X : C.reps)
        for (const auto& Y : D.reps) {
            if (popcount(X.support & Y.support) > k) continue;
            if (!perp(C.H, X.entries, Y.entries))
                rep.fail_once(tag, "X=" + C.N.set_str(X.support) + " Y=" + D.N.set_str(Y.support));
        }
    rep.pass_if_absent(tag);
    return rep;
}

// The dual of a left H-matroid: right signature of N* built from the dual map.
inline Signature dual_matroid(const Signature& M) {
    return signature_from_coords(dual_coords(coords_from_signature(M)));
}

// ---------------------------------------------------------------------------
// push-forward, minors, rescaling
// ---------------------------------------------------------------------------

inline Signature pushforward(const Hom& f, const Signature& M) {
    if (f.src->key != M.H->key) throw sig_error("pushforward: hom source differs from signature carrier");
    Signature S;
    S.side = M.side;
    S.H = f.dst;
    S.N = M.N;
    for (const auto& r : M.reps) {
        std::vector<HElem> img;
        img.reserve(r.entries.size());
        for (const HElem& x : r.entries) img.push_back(f.apply(x));
        S.reps.push_back(canonical_rep(S.side, S.H, make_vec(S.H, std::move(img))));
    }
    return S;
}

// C/S\T: restrict every stored circuit X with support avoiding T whose
// support minus S is a circuit of N/S\T.
inline Signature minor_signature(const Signature& M, Mask S, Mask T) {
    if (S & T) throw sig_error("minor: contract and delete sets overlap");
    Signature out;
    out.side = M.side;
    out.H = M.H;
    out.N = M.N.minor(S, T);
    const auto& old_of = out.N.old_index();
    auto to_old = [&](Mask sub) {
        Mask m = 0;
        for (size_t i = 0; i < old_of.size(); ++i)
            if ((sub >> i) & 1) m |= 1u << old_of[i];
        return m;
    };
    for (Mask c : out.N.circuits()) {
        Mask target = to_old(c);
        const CircuitVec* found = nullptr;
        for (const auto& r : M.reps) {
            if (r.support & T) continue;
            if ((r.support & ~(target | S)) != 0) continue;
            if ((r.support & ~S) != target) continue;
            found = &r;
            break;
        }
        if (!found) throw sig_error("minor: no circuit restricts to " + out.N.set_str(c));
        std::vector<HElem> entries;
        for (int old_e : old_of) entries.push_back(found->entries[old_e]);
        out.reps.push_back(canonical_rep(out.side, out.H, make_vec(out.H, std::move(entries))));
    }
    return out;
}

// Matroid rescaling: circuits of a left matroid pick up rho^{-1} on the
// right; the dual (cocircuit/right) side picks up rho on the left.
inline Signature rescale(const Signature& M, const std::vector<HElem>& rho) {
    if ((int)rho.size() != M.N.n) throw sig_error("rescale: |rho| != |E|");
    for (const auto& r : rho)
        if (M.H->is_zero(r)) throw sig_error("rescale: rho has a zero entry");
    Signature out;
    out.side = M.side;
    out.H = M.H;
    out.N = M.N;
    for (const auto& r : M.reps) {
        std::vector<HElem> entries(M.N.n, M.H->zero());
        for (int e = 0; e < M.N.n; ++e)
            if (!r.entries[e].zero)
                entries[e] = M.side == Side::left ? M.H->mul(r.entries[e], M.H->inv(rho[e]))
                                                  : M.H->mul(rho[e], r.entries[e]);
        out.reps.push_back(canonical_rep(out.side, out.H, make_vec(out.H, std::move(entries))));
    }
    return out;
}

// Locality: P-axioms hold iff they hold on all minors of rank <= 2 and
// corank <= 2 with S independent and T coindependent.
inline Report minor_locality_check(const Signature& M) {
    Report rep;
    bool global = check_plucker(coords_from_signature(M)).ok();
    bool local = true;
    std::string witness;
    Mask full = M.N.full_mask();
    for (Mask S = 0; S <= full; ++S) {
        if (!M.N.independent(S)) continue;
        Matroid Nd = M.N.dual();
        for (Mask T = 0; T <= full; ++T) {
            if (S & T) continue;
            if (!Nd.independent(T)) continue;
            Matroid mino = M.N.minor(S, T);
            if (mino.rank > 2 || mino.n - mino.rank > 2) continue;
            Signature ms = minor_signature(M, S, T);
            if (!check_plucker(coords_from_signature(ms)).ok()) {
                local = false;
                witness = "minor /" + M.N.set_str(S) + " \\ " + M.N.set_str(T);
                break;
            }
        }
        if (!local) break;
    }
    rep.add("global-pluecker", global);
    rep.add("small-minors-pluecker", local, witness);
    rep.add("locality-equivalence", global == local,
            global ? "global passes but a small minor fails" : "small minors pass but global fails");
    return rep;
}

// ---------------------------------------------------------------------------
// U(2,4) rescaling classes
// ---------------------------------------------------------------------------

// The signature U_H(x,y) containing (0,1,1,1), (1,0,-1,-x), (1,1,0,y), (1,x,-y,0).
inline Signature u24_make(const HF& H, const HElem& x, const HElem& y, Side side = Side::left) {
    if (H->is_zero(x) || H->is_zero(y)) throw sig_error("u24: x, y must be nonzero");
    if (!H->add(x, y).contains(H->one())) throw sig_error("u24: requires 1 in x (+) y");
    Matroid N = Matroid::uniform(2, 4);
    HElem o = H->one(), z = H->zero();
    std::vector<std::vector<HElem>> vecs = {
        {z, o, o, o},
        {o, z, H->neg(o), H->neg(x)},
        {o, o, z, y},
        {o, x, H->neg(y), z},
    };
    return make_signature(side, H, std::move(N), vecs);
}

// Normal form (x, y) with 1 in x (+) y of any signature over U(2,4).
inline std::pair<HElem, HElem> u24_classify(const Signature& M) {
    const HF& H = M.H;
    if (!(M.N == Matroid::uniform(2, 4, M.N.labels))) throw sig_error("u24_classify: underlying matroid is not U(2,4)");
    Side sd = M.side;
    // supports: W = {b,c,d}, X = {a,c,d}, Y = {a,b,d}, Z = {a,b,c}
    CircuitVec W = M.rep_for(0b1110), X = M.rep_for(0b1101), Y = M.rep_for(0b1011), Z = M.rep_for(0b0111);
    // canonical reps already have entry 1 at the least support element (a for X,Y,Z; b for W)
    HElem alpha = solve_scale(sd, H, W.entries[1], Y.entries[1]);
    for (auto& v : W.entries)
        if (!v.zero) v = mulS(sd, H, alpha, v);
    std::vector<HElem> rho{H->one(), H->inv(W.entries[1]), H->inv(W.entries[2]), H->inv(W.entries[3])};
    auto scale_sig = [&](CircuitVec v) { // signature rescaling: X_e rho_e (left) / rho_e X_e (right)
        for (int e = 0; e < 4; ++e)
            if (!v.entries[e].zero)
                v.entries[e] = sd == Side::left ? H->mul(v.entries[e], rho[e]) : H->mul(rho[e], v.entries[e]);
        return v;
    };
    W = scale_sig(W);
    X = scale_sig(X);
    Y = scale_sig(Y);
    Z = scale_sig(Z);
    HElem x = H->neg(X.entries[3]);
    HElem y = Y.entries[3];
    if (!(X.entries[2] == H->neg(H->one())))
        throw sig_error("u24_classify: not a left H-matroid (X_c != -1 after normal form)");
    if (!(Z.entries[1] == x) || !(Z.entries[2] == H->neg(y)))
        throw sig_error("u24_classify: not a left H-matroid (Z mismatch in normal form)");
    if (!H->add(x, y).contains(H->one()))
        throw sig_error("u24_classify: 1 not in x (+) y");
    return {x, y};
}

// All (x', y') whose class equals that of (x, y): the conjugacy orbit.
inline std::set<std::pair<HElem, HElem>> u24_orbit(const HF& H, const HElem& x, const HElem& y) {
    std::set<std::pair<HElem, HElem>> out;
    for (const HElem& b : H->nonzero_elements()) {
        HElem bi = H->inv(b);
        out.insert({H->mul(H->mul(b, x), bi), H->mul(H->mul(b, y), bi)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// cross ratios
// ---------------------------------------------------------------------------

struct CrossRatioFrame {
    Mask F = 0;
    int a = 0, b = 0, c = 0, d = 0;
};

inline bool frame_in_crn(const Matroid& N, const CrossRatioFrame& f) {
    auto B = [&](int u, int v) { return f.F | (1u << u) | (1u << v); };
    std::set<int> distinct{f.a, f.b, f.c, f.d};
    if (distinct.size() != 4) return false;
    for (int e : distinct)
        if ((f.F >> e) & 1) return false;
    return N.has_basis(B(f.a, f.c)) && N.has_basis(B(f.a, f.d)) && N.has_basis(B(f.b, f.d)) &&
           N.has_basis(B(f.b, f.c));
}

// cr(F,a,b,c,d) = [Fac, Fad] [Fbd, Fbc]
inline HElem cross_ratio(const Coordinates& C, const CrossRatioFrame& f) {
    if (!frame_in_crn(C.N, f)) throw sig_error("cross_ratio: frame not in CR_N");
    auto B = [&](int u, int v) { return f.F | (1u << u) | (1u << v); };
    return mulS(C.side, C.H, C.at(B(f.a, f.c), B(f.a, f.d)), C.at(B(f.b, f.d), B(f.b, f.c)));
}

inline HElem cross_ratio(const Signature& M, const CrossRatioFrame& f) {
    return cross_ratio(coords_from_signature(M), f);
}

inline Report cr_properties_check(const Signature& M) {
    Report rep;
    for (const char* nm : {"CR0", "CR1", "CR2", "CR3", "CR4", "CRP"}) rep.add(nm, true);
    Coordinates C = coords_from_signature(M);
    const HF& H = M.H;
    const Matroid& N = M.N;
    Side sd = M.side;
    HElem one = H->one();
    auto cr = [&](Mask F, int a, int b, int c, int d) {
        return cross_ratio(C, CrossRatioFrame{F, a, b, c, d});
    };
    auto in_crn = [&](Mask F, int a, int b, int c, int d) {
        return frame_in_crn(N, CrossRatioFrame{F, a, b, c, d});
    };
    if (N.rank >= 2) {
        detail::TupleIter{N, N.rank - 2, 4}.run([&](Mask F, const std::vector<int>& v) {
            int a = v[0], b = v[1], c = v[2], d = v[3];
            if (!in_crn(F, a, b, c, d)) return;
            std::string at = "F=" + N.set_str(F) + " (" + N.labels[a] + "," + N.labels[b] + "," +
                             N.labels[c] + "," + N.labels[d] + ")";
            if (in_crn(F, b, a, c, d) &&
                !(mulS(sd, H, cr(F, a, b, c, d), cr(F, b, a, c, d)) == one))
                rep.fail_once("CR0", at);
            Mask Fab = F | (1u << a) | (1u << b), Fcd = F | (1u << c) | (1u << d);
            if ((!N.has_basis(Fab) || !N.has_basis(Fcd)) && !(cr(F, a, b, c, d) == one))
                rep.fail_once("CR3", at);
            if (in_crn(F, b, c, d, a) && in_crn(F, a, c, d, b)) {
                HSet s = H->add(cr(F, b, c, d, a), cr(F, a, c, d, b));
                if (!s.contains(one)) rep.fail_once("CR4", at);
            }
            if (in_crn(F, c, b, a, d)) {
                // [Fad,Fcd] cr(F,a,b,c,d) = -cr(F,c,b,a,d) [Fab,Fbc]
                Mask Fad = F | (1u << a) | (1u << d), Fbc2 = F | (1u << b) | (1u << c);
                if (N.has_basis(Fad) && N.has_basis(Fcd) && N.has_basis(Fab) && N.has_basis(Fbc2)) {
                    HElem lhs = mulS(sd, H, C.at(Fad, Fcd), cr(F, a, b, c, d));
                    HElem rhs = H->neg(mulS(sd, H, cr(F, c, b, a, d), C.at(Fab, Fbc2)));
                    if (!(lhs == rhs)) rep.fail_once("CRP", at);
                }
            }
        });
        detail::TupleIter{N, N.rank - 2, 5}.run([&](Mask F, const std::vector<int>& v) {
            int a = v[0], b = v[1], c = v[2], d = v[3], e = v[4];
            if (!in_crn(F, a, b, d, e) || !in_crn(F, b, c, d, e) || !in_crn(F, c, a, d, e)) return;
            HElem p = mulS(sd, H, mulS(sd, H, cr(F, a, b, d, e), cr(F, b, c, d, e)), cr(F, c, a, d, e));
            if (!(p == one)) rep.fail_once("CR1", "F=" + N.set_str(F));
        });
    }
    if (N.rank >= 3) {
        detail::TupleIter{N, N.rank - 3, 5}.run([&](Mask F, const std::vector<int>& v) {
            int a = v[0], b = v[1], c = v[2], d = v[3], e = v[4];
            Mask Fa = F | (1u << a), Fb = F | (1u << b), Fc = F | (1u << c);
            if (!in_crn(Fa, b, c, d, e) || !in_crn(Fc, a, b, d, e) || !in_crn(Fb, c, a, d, e)) return;
            HElem p = mulS(sd, H, mulS(sd, H, cr(Fa, b, c, d, e), cr(Fc, a, b, d, e)),
                           cr(Fb, c, a, d, e));
            if (!(p == one)) rep.fail_once("CR2", "F=" + N.set_str(F));
        });
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Grassmann-Pluecker functions (commutative carriers)
// ---------------------------------------------------------------------------

struct GpFunction {
    HF H;
    Matroid N;
    std::map<Mask, HElem> val; // on r-subsets; tuples get the sorting sign

    // phi of the tuple (sorted F elements..., appended...), 0 on repeats
    HElem of_tuple(Mask F, const std::vector<int>& appended) const {
        std::vector<int> tup;
        for (int e = 0; e < N.n; ++e)
            if ((F >> e) & 1) tup.push_back(e);
        for (int e : appended) tup.push_back(e);
        std::set<int> dis(tup.begin(), tup.end());
        if (dis.size() != tup.size()) return H->zero();
        int inv = 0;
        for (size_t i = 0; i < tup.size(); ++i)
            for (size_t j = i + 1; j < tup.size(); ++j)
                if (tup[i] > tup[j]) ++inv;
        Mask m = 0;
        for (int e : tup) m |= 1u << e;
        auto it = val.find(m);
        HElem v = it == val.end() ? H->zero() : it->second;
        return (inv % 2) ? H->neg(v) : v;
    }
};

inline Report gp_check(const GpFunction& phi) {
    Report rep;
    const HF& H = phi.H;
    const Matroid& N = phi.N;
    if (!H->commutative()) throw sig_error("gp: carrier must be commutative");
    for (Mask m = 0; m <= N.full_mask(); ++m) {
        if (popcount(m) != N.rank) continue;
        auto it = phi.val.find(m);
        bool nonzero = it != phi.val.end() && !H->is_zero(it->second);
        if (nonzero != N.has_basis(m)) rep.fail_once("GP0", N.set_str(m));
    }
    rep.pass_if_absent("GP0");
    rep.add("GP1", true, "alternation holds by tuple-sign construction");
    if (N.rank >= 2)
        detail::TupleIter{N, N.rank - 2, 4}.run([&](Mask F, const std::vector<int>& v) {
            int a = v[0], b = v[1], c = v[2], d = v[3];
            std::vector<HElem> terms{
                H->mul(phi.of_tuple(F, {a, b}), phi.of_tuple(F, {c, d})),
                H->mul(phi.of_tuple(F, {a, c}), phi.of_tuple(F, {d, b})),
                H->mul(phi.of_tuple(F, {a, d}), phi.of_tuple(F, {b, c}))};
            if (!H->nary_contains(terms, H->zero()))
                rep.fail_once("GP2", "F=" + N.set_str(F) + " a=" + N.labels[a] + " b=" + N.labels[b] +
                                         " c=" + N.labels[c] + " d=" + N.labels[d]);
        });
    rep.pass_if_absent("GP2");
    return rep;
}

// [Fa, Fb] = phi(Fa) / phi(Fb)
inline Coordinates gp_to_coords(const GpFunction& phi) {
    if (!phi.H->commutative()) throw sig_error("gp: carrier must be commutative");
    Coordinates C;
    C.side = Side::left;
    C.H = phi.H;
    C.N = phi.N;
    for (auto [B1, B2] : phi.N.adjacent_bases()) {
        int a = lowest_bit(B1 & ~B2), b = lowest_bit(B2 & ~B1);
        Mask F = B1 & B2;
        HElem pa = phi.of_tuple(F, {a});
        HElem pb = phi.of_tuple(F, {b});
        C.val[{B1, B2}] = phi.H->mul(pa, phi.H->inv(pb));
    }
    return C;
}

// Fix phi = 1 on the lexicographically least basis and propagate ratios along
// a spanning tree of the basis-exchange graph; then verify every edge.
inline GpFunction coords_to_gp(const Coordinates& C) {
    if (!C.H->commutative()) throw sig_error("gp: carrier must be commutative");
    GpFunction phi;
    phi.H = C.H;
    phi.N = C.N;
    const HF& H = C.H;
    auto edge_sign = [&](Mask B1, Mask B2, int a, int b) {
        Mask F = B1 & B2;
        int pa = popcount(F & ((1u << a) - 1));
        int pb = popcount(F & ((1u << b) - 1));
        return (pa + pb) % 2;
    };
    std::queue<Mask> q;
    Mask B0 = C.N.bases.front();
    phi.val[B0] = H->one();
    q.push(B0);
    while (!q.empty()) {
        Mask B = q.front();
        q.pop();
        for (auto [B1, B2] : C.N.adjacent_bases()) {
            if (B1 != B || phi.val.count(B2)) continue;
            int a = lowest_bit(B1 & ~B2), b = lowest_bit(B2 & ~B1);
            HElem v = H->mul(H->inv(C.at(B1, B2)), phi.val[B1]);
            if (edge_sign(B1, B2, a, b)) v = H->neg(v);
            phi.val[B2] = v;
            q.push(B2);
        }
    }
    for (auto [B1, B2] : C.N.adjacent_bases()) {
        int a = lowest_bit(B1 & ~B2), b = lowest_bit(B2 & ~B1);
        HElem expect = H->mul(phi.val.at(B1), H->inv(phi.val.at(B2)));
        if (edge_sign(B1, B2, a, b)) expect = H->neg(expect);
        if (!(expect == C.at(B1, B2)))
            throw sig_error("coords_to_gp: ratio cycle inconsistency at " + C.N.set_str(B1) + " -> " +
                            C.N.set_str(B2));
    }
    Report chk = gp_check(phi);
    if (!chk.ok()) {
        const auto* f = chk.first_fail();
        throw sig_error("coords_to_gp: " + f->check + " fails (" + f->witness + ")");
    }
    return phi;
}

// Restriction of coordinates to the adjacent bases of a rank-preserving weak
// image (every basis of Nw is a basis of C.N).
inline Coordinates restrict_coords(const Coordinates& C, const Matroid& Nw) {
    if (Nw.n != C.N.n) throw sig_error("restrict_coords: ground sets differ");
    Coordinates out;
    out.side = C.side;
    out.H = C.H;
    out.N = Nw;
    for (auto [B1, B2] : Nw.adjacent_bases()) out.val[{B1, B2}] = C.at(B1, B2);
    return out;
}

} // namespace skewmat
