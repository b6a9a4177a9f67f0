#pragma once

// Boundary matroids of Z_min- and monomial-hyperfield matroids, and flocks:
// the family of boundary matroids of all T-power rescalings, checked against
// the flock axioms on a finite lattice window.

#include "skewmat/hmatroid.hpp"

namespace skewmat {

// A matroid valuation materialized on the basis family, normalized to min 0.
struct Valuation {
    Matroid N;
    std::map<Mask, long long> nu;

    std::vector<Mask> argmin() const {
        long long best = 0;
        bool first = true;
        for (const auto& [b, v] : nu) {
            if (first || v < best) best = v;
            first = false;
        }
        std::vector<Mask> out;
        for (const auto& [b, v] : nu)
            if (v == best) out.push_back(b);
        return out;
    }
};

inline int level_of(const HF& H, const HElem& x) {
    if (H->car != Carrier::zmin && H->car != Carrier::monomial)
        throw sig_error("level: carrier has no T-levels");
    if (x.zero) throw sig_error("level of zero");
    return x.lev;
}

// nu(B) - nu(B') = level([B,B']), propagated from the first basis and
// verified on every exchange edge.
inline Valuation valuation_from_coords(const Coordinates& C) {
    Valuation V;
    V.N = C.N;
    std::map<Mask, long long> nu;
    std::queue<Mask> q;
    nu[C.N.bases.front()] = 0;
    q.push(C.N.bases.front());
    auto edges = C.N.adjacent_bases();
    while (!q.empty()) {
        Mask B = q.front();
        q.pop();
        for (auto [B1, B2] : edges) {
            if (B1 != B || nu.count(B2)) continue;
            nu[B2] = nu[B1] - level_of(C.H, C.at(B1, B2));
            q.push(B2);
        }
    }
    for (auto [B1, B2] : edges)
        if (nu.at(B1) - nu.at(B2) != level_of(C.H, C.at(B1, B2)))
            throw sig_error("valuation propagation is path-dependent at " + C.N.set_str(B1) +
                            " -> " + C.N.set_str(B2));
    long long mn = 0;
    bool first = true;
    for (auto& [b, v] : nu) {
        if (first || v < mn) mn = v;
        first = false;
    }
    for (auto& [b, v] : nu) v -= mn;
    V.nu = std::move(nu);
    return V;
}

inline Valuation valuation_of(const Signature& M) {
    return valuation_from_coords(coords_from_signature(M));
}

inline Matroid boundary_of_valuation(const Valuation& V) {
    return Matroid::from_bases(V.N.labels, V.argmin());
}

// Boundary matroid of a Z_min-matroid: the minimum-valuation bases.
inline Matroid zmin_boundary(const Signature& M) {
    if (M.H->car != Carrier::zmin) throw sig_error("zmin_boundary: carrier must be zmin");
    return boundary_of_valuation(valuation_of(M));
}

// Boundary matroid of a monomial-hyperfield matroid: the coordinates between
// minimum-valuation bases have level 0 and restrict to the base hyperfield.
inline Signature boundary_matroid(const Signature& M) {
    if (M.H->car != Carrier::monomial) throw sig_error("boundary_matroid: carrier must be monomial");
    Coordinates C = coords_from_signature(M);
    Matroid N0 = boundary_of_valuation(valuation_from_coords(C));
    const HF& B = M.H->base;
    Coordinates C0;
    C0.side = M.side;
    C0.H = B;
    C0.N = N0;
    for (auto [B1, B2] : N0.adjacent_bases()) {
        HElem v = C.at(B1, B2);
        if (v.zero || v.lev != 0)
            throw sig_error("boundary: coordinate between minimum bases has nonzero level");
        C0.val[{B1, B2}] = B->mk(v.a, 0);
    }
    return signature_from_coords(C0);
}

// ---------------------------------------------------------------------------
// flocks
// ---------------------------------------------------------------------------

struct Flock {
    Signature source; // the monomial-hyperfield matroid
    int w = 2;        // window half-width: alpha in [-w, w]^E
    std::map<std::vector<int>, Signature> fibers;

    const Signature& fiber(const std::vector<int>& alpha) const {
        auto it = fibers.find(alpha);
        if (it == fibers.end()) throw sig_error("flock: alpha outside window");
        return it->second;
    }
};

inline std::vector<HElem> tau_rho(const HF& Hmono, const std::vector<int>& alpha) {
    std::vector<HElem> rho;
    for (int a : alpha) rho.push_back(Hmono->mk(Hmono->base->one().a, a));
    return rho;
}

// fiber(alpha) = boundary matroid of the rescaling of M by e -> T^(alpha_e)
inline Flock flock_window(const Signature& M, int w) {
    if (M.H->car != Carrier::monomial) throw sig_error("flock: carrier must be monomial");
    Flock F;
    F.source = M;
    F.w = w;
    std::vector<int> alpha(M.N.n, -w);
    for (;;) {
        F.fibers.emplace(alpha, boundary_matroid(rescale(M, tau_rho(M.H, alpha))));
        int i = 0;
        while (i < M.N.n && alpha[i] == w) alpha[i++] = -w;
        if (i == M.N.n) break;
        ++alpha[i];
    }
    return F;
}

// (F1): F_alpha \ e = F_(alpha+1_e) / e, the pairing the fiber map satisfies.
// (F2): F_(alpha+1_E) = sigma_* F_alpha (coefficient-wise twist).
// (MF1)/(MF2): the underlying matroid flock axioms on the kappa-images.
inline Report check_flock(const Flock& F) {
    Report rep;
    for (const char* nm : {"F1", "F2", "MF1", "MF2"}) rep.add(nm, true);
    const Signature& M = F.source;
    const HF& base = M.H->base;
    Hom sig_star = [&] {
        if (base->car == Carrier::gf && M.H->sigma.kind != Automorphism::Kind::table)
            return Hom::sigma_power(
                base, M.H->sigma.kind == Automorphism::Kind::frob ? M.H->sigma.pow : 0);
        // tabulate the automorphism on a general finite base
        std::vector<HElem> images;
        for (const HElem& x : base->elements()) images.push_back(base->apply_auto(M.H->sigma, x, 1));
        return Hom::table(base, base, std::move(images));
    }();
    auto alpha_str = [&](const std::vector<int>& a) {
        std::string s = "(";
        for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
        return s + ")";
    };
    for (const auto& [alpha, fib] : F.fibers) {
        // (F1) and (MF1) against alpha + 1_e
        for (int e = 0; e < M.N.n; ++e) {
            if (alpha[e] + 1 > F.w) continue;
            std::vector<int> up = alpha;
            ++up[e];
            const Signature& fib_up = F.fiber(up);
            Signature del = minor_signature(fib, 0, 1u << e);
            Signature con = minor_signature(fib_up, 1u << e, 0);
            std::string at = "alpha=" + alpha_str(alpha) + " e=" + M.N.labels[e];
            if (!(del.N == con.N)) {
                rep.fail_once("MF1", at);
                rep.fail_once("F1", at);
            } else if (!(del == con))
                rep.fail_once("F1", at);
        }
        // (F2) and (MF2) against alpha + 1_E
        bool inside = true;
        for (int v : alpha) inside &= (v + 1 <= F.w);
        if (inside) {
            std::vector<int> up = alpha;
            for (int& v : up) ++v;
            const Signature& fib_up = F.fiber(up);
            Signature twisted = pushforward(sig_star, fib);
            if (!(fib_up.N == fib.N)) {
                rep.fail_once("MF2", "alpha=" + alpha_str(alpha));
                rep.fail_once("F2", "alpha=" + alpha_str(alpha));
            } else if (!(fib_up == twisted))
                rep.fail_once("F2", "alpha=" + alpha_str(alpha));
        }
    }
    return rep;
}

} // namespace skewmat
