#pragma once

// Ore polynomials K[T, sigma] over GF(p^k) with the Frobenius twist
// T a = sigma(a) T, the left fraction field, kernels of vector families on
// both sides, the hat map to additive polynomials, sigma-derivatives, and
// quasi-determinants.

#include "skewmat/hmatroid.hpp"

#include <numeric>

namespace skewmat {

struct ore_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int NU_INF = INT32_MAX / 2;

struct OreRing {
    std::shared_ptr<const GFTable> F; // sigma = Frobenius x -> x^p

    int p() const { return F->p; }
    int k() const { return F->k; }
    int sig(int a, long long j) const { return F->frob(a, (int)(((j % F->k) + F->k) % F->k)); }
    bool operator==(const OreRing& o) const { return F == o.F; }
};

// Coefficient list c[0..n], highest index nonzero (empty = zero polynomial).
struct OrePoly {
    std::vector<int> c;

    bool zero() const { return c.empty(); }
    int deg() const { return (int)c.size() - 1; } // -1 for zero
    int at(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : 0; }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    static OrePoly from(std::vector<int> coeffs) {
        OrePoly f{std::move(coeffs)};
        f.trim();
        return f;
    }
    static OrePoly t_power(int d, int coef = 1) {
        std::vector<int> c(d + 1, 0);
        c[d] = coef;
        return from(std::move(c));
    }
    static OrePoly constant(int a) { return from({a}); }
    friend bool operator==(const OrePoly& f, const OrePoly& g) { return f.c == g.c; }
};

inline int nu(const OrePoly& f) {
    for (int i = 0; i < (int)f.c.size(); ++i)
        if (f.c[i]) return i;
    return NU_INF;
}

inline OrePoly o_add(const OreRing& R, const OrePoly& f, const OrePoly& g) {
    std::vector<int> c(std::max(f.c.size(), g.c.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = R.F->add(f.at((int)i), g.at((int)i));
    return OrePoly::from(std::move(c));
}
inline OrePoly o_neg(const OreRing& R, const OrePoly& f) {
    std::vector<int> c = f.c;
    for (int& x : c) x = R.F->neg(x);
    return OrePoly::from(std::move(c));
}
inline OrePoly o_sub(const OreRing& R, const OrePoly& f, const OrePoly& g) {
    return o_add(R, f, o_neg(R, g));
}
inline OrePoly o_mul(const OreRing& R, const OrePoly& f, const OrePoly& g) {
    if (f.zero() || g.zero()) return {};
    std::vector<int> c(f.c.size() + g.c.size() - 1, 0);
    for (int i = 0; i < (int)f.c.size(); ++i) {
        if (!f.c[i]) continue;
        for (int j = 0; j < (int)g.c.size(); ++j) {
            if (!g.c[j]) continue;
            c[i + j] = R.F->add(c[i + j], R.F->mul(f.c[i], R.sig(g.c[j], i)));
        }
    }
    return OrePoly::from(std::move(c));
}
inline OrePoly o_scale_left(const OreRing& R, int a, const OrePoly& f) {
    std::vector<int> c = f.c;
    for (int& x : c) x = R.F->mul(a, x);
    return OrePoly::from(std::move(c));
}
inline OrePoly o_scale_right(const OreRing& R, const OrePoly& f, int a) {
    std::vector<int> c = f.c;
    for (int i = 0; i < (int)c.size(); ++i) c[i] = R.F->mul(c[i], R.sig(a, i));
    return OrePoly::from(std::move(c));
}

// f = q*g + r with deg r < deg g.
inline std::pair<OrePoly, OrePoly> right_divide(const OreRing& R, OrePoly f, const OrePoly& g) {
    if (g.zero()) throw ore_error("division by zero");
    std::vector<int> q(std::max<int>(0, f.deg() - g.deg() + 1), 0);
    while (!f.zero() && f.deg() >= g.deg()) {
        int t = f.deg() - g.deg();
        int lead = R.F->mul(f.c.back(), R.F->inv(R.sig(g.c.back(), t)));
        q[t] = lead;
        OrePoly piece = o_mul(R, OrePoly::t_power(t, lead), g);
        f = o_sub(R, f, piece);
    }
    return {OrePoly::from(std::move(q)), f};
}

// f = g*q + r with deg r < deg g.
inline std::pair<OrePoly, OrePoly> left_divide(const OreRing& R, OrePoly f, const OrePoly& g) {
    if (g.zero()) throw ore_error("division by zero");
    int m = g.deg();
    std::vector<int> q(std::max<int>(0, f.deg() - m + 1), 0);
    while (!f.zero() && f.deg() >= m) {
        int t = f.deg() - m;
        int lead = R.sig(R.F->mul(R.F->inv(g.c.back()), f.c.back()), -m);
        q[t] = lead;
        OrePoly piece = o_mul(R, g, OrePoly::t_power(t, lead));
        f = o_sub(R, f, piece);
    }
    return {OrePoly::from(std::move(q)), f};
}

inline OrePoly monic_left(const OreRing& R, const OrePoly& f) {
    if (f.zero()) return f;
    return o_scale_left(R, R.F->inv(f.c.back()), f);
}
inline OrePoly monic_right(const OreRing& R, const OrePoly& f) {
    if (f.zero()) return f;
    return o_scale_right(R, f, R.sig(R.F->inv(f.c.back()), -f.deg()));
}

// greatest common right divisor; a right divisor is determined up to a left
// unit, so normalize by a left constant
inline OrePoly gcrd(const OreRing& R, OrePoly f, OrePoly g) {
    while (!g.zero()) {
        OrePoly r = right_divide(R, f, g).second;
        f = g;
        g = r;
    }
    return monic_left(R, f);
}
// greatest common left divisor; determined up to a right unit
inline OrePoly gcld(const OreRing& R, OrePoly f, OrePoly g) {
    while (!g.zero()) {
        OrePoly r = left_divide(R, f, g).second;
        f = g;
        g = r;
    }
    return monic_right(R, f);
}

// least common left multiple: m = x*f = y*g of minimal degree
struct Lclm {
    OrePoly m, x, y;
};
inline Lclm left_lcm(const OreRing& R, const OrePoly& f, const OrePoly& g) {
    if (f.zero() || g.zero()) throw ore_error("left_lcm of zero");
    // extended Euclid with right division; r_i = u_i f + v_i g
    OrePoly r0 = f, r1 = g;
    OrePoly u0 = OrePoly::constant(1), v0, u1, v1 = OrePoly::constant(1);
    while (!r1.zero()) {
        auto [q, r2] = right_divide(R, r0, r1);
        OrePoly u2 = o_sub(R, u0, o_mul(R, q, u1));
        OrePoly v2 = o_sub(R, v0, o_mul(R, q, v1));
        r0 = r1;
        r1 = r2;
        u0 = u1;
        v0 = v1;
        u1 = u2;
        v1 = v2;
    }
    // now u1 f + v1 g = 0
    Lclm out;
    out.x = u1;
    out.y = o_neg(R, v1);
    out.m = o_mul(R, out.x, f);
    // normalize monic
    if (!out.m.zero()) {
        int c = R.F->inv(out.m.c.back());
        out.m = o_scale_left(R, c, out.m);
        out.x = o_scale_left(R, c, out.x);
        out.y = o_scale_left(R, c, out.y);
    }
    return out;
}

// ---------------------------------------------------------------------------
// left fractions  den^{-1} * num
// ---------------------------------------------------------------------------

struct OreFrac {
    OrePoly den = OrePoly::constant(1);
    OrePoly num;

    bool zero() const { return num.zero(); }
    static OreFrac from_poly(OrePoly f) { return {OrePoly::constant(1), std::move(f)}; }
};

inline OreFrac f_normalize(const OreRing& R, OreFrac x) {
    if (x.den.zero()) throw ore_error("fraction with zero denominator");
    if (x.num.zero()) return {OrePoly::constant(1), {}};
    OrePoly g = gcld(R, x.den, x.num);
    if (g.deg() > 0) {
        auto [qd, rd] = left_divide(R, x.den, g);
        auto [qn, rn] = left_divide(R, x.num, g);
        if (!rd.zero() || !rn.zero()) throw ore_error("internal: gcld does not divide");
        x.den = qd;
        x.num = qn;
    }
    int c = R.F->inv(x.den.c.back());
    x.den = o_scale_left(R, c, x.den);
    x.num = o_scale_left(R, c, x.num);
    return x;
}

inline bool f_eq(const OreRing& R, const OreFrac& a, const OreFrac& b) {
    // a.den^{-1} a.num = b.den^{-1} b.num  iff  x*a.num = y*b.num
    // where x*a.den = y*b.den is the least common left multiple
    Lclm l = left_lcm(R, a.den, b.den);
    return o_mul(R, l.x, a.num) == o_mul(R, l.y, b.num);
}

inline OreFrac f_add(const OreRing& R, const OreFrac& a, const OreFrac& b) {
    Lclm l = left_lcm(R, a.den, b.den);
    OreFrac out{l.m, o_add(R, o_mul(R, l.x, a.num), o_mul(R, l.y, b.num))};
    return f_normalize(R, out);
}
inline OreFrac f_neg(const OreRing& R, const OreFrac& a) { return {a.den, o_neg(R, a.num)}; }
inline OreFrac f_sub(const OreRing& R, const OreFrac& a, const OreFrac& b) {
    return f_add(R, a, f_neg(R, b));
}
inline OreFrac f_mul(const OreRing& R, const OreFrac& a, const OreFrac& b) {
    if (a.zero() || b.zero()) return {};
    // a.num * b.den^{-1} = c'^{-1} * n'  via  c' * a.num = n' * b.den
    Lclm l = left_lcm(R, a.num, b.den);
    OreFrac out{o_mul(R, l.x, a.den), o_mul(R, l.y, b.num)};
    return f_normalize(R, out);
}
inline OreFrac f_inv(const OreRing& R, const OreFrac& a) {
    if (a.zero()) throw ore_error("inverse of zero fraction");
    return f_normalize(R, {a.num, a.den});
}

inline int nu_frac(const OreFrac& a) { return a.zero() ? NU_INF : nu(a.num) - nu(a.den); }

// mu into the monomial hyperfield H(T, frob, min) over the same field
inline HElem mu_poly(const OreRing&, const HF& Hmono, const OrePoly& f) {
    if (f.zero()) return Hmono->zero();
    int m = nu(f);
    return Hmono->mk(f.c[m], m);
}
inline HElem mu_frac(const OreRing& R, const HF& Hmono, const OreFrac& a) {
    if (a.zero()) return Hmono->zero();
    return Hmono->mul(Hmono->inv(mu_poly(R, Hmono, a.den)), mu_poly(R, Hmono, a.num));
}

// ---------------------------------------------------------------------------
// vector families and kernels
// ---------------------------------------------------------------------------

struct OreFamily {
    OreRing R;
    int d = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<OrePoly>> cols; // cols[e][i], i < d

    int n() const { return (int)cols.size(); }
};

inline void validate_family(const OreFamily& V) {
    if (V.d < 1) throw ore_error("family needs d >= 1");
    if (V.d > 4) throw ore_error("family capped at d <= 4");
    if (V.n() > 8) throw ore_error("family capped at 8 columns");
    if ((int)V.labels.size() != V.n()) throw ore_error("labels/columns mismatch");
    std::set<std::string> seen(V.labels.begin(), V.labels.end());
    if ((int)seen.size() != V.n()) throw ore_error("duplicate column labels");
    for (const auto& col : V.cols)
        if ((int)col.size() != V.d) throw ore_error("column height differs from d");
}

// Left kernel of the rows {A[s]: s}, i.e. all U with sum_s U_s * A[s][i] = 0.
// Pivots: minimal (nu, deg num + deg den). Returns a basis.
inline std::vector<std::vector<OreFrac>> left_kernel(const OreRing& R,
                                                     std::vector<std::vector<OreFrac>> rows,
                                                     int width) {
    int nrows = (int)rows.size();
    for (int s = 0; s < nrows; ++s) {
        rows[s].resize(width + nrows);
        rows[s][width + s] = OreFrac::from_poly(OrePoly::constant(1));
    }
    std::vector<char> used(nrows, 0);
    for (int col = 0; col < width; ++col) {
        int pivot = -1;
        long long best_nu = 0, best_deg = 0;
        for (int s = 0; s < nrows; ++s) {
            if (used[s] || rows[s][col].zero()) continue;
            long long nv = nu_frac(rows[s][col]);
            long long dg = rows[s][col].num.deg() + rows[s][col].den.deg();
            if (pivot < 0 || std::tie(nv, dg) < std::tie(best_nu, best_deg)) {
                pivot = s;
                best_nu = nv;
                best_deg = dg;
            }
        }
        if (pivot < 0) continue;
        used[pivot] = 1;
        for (int s = 0; s < nrows; ++s) {
            if (s == pivot || rows[s][col].zero()) continue;
            OreFrac f = f_mul(R, rows[s][col], f_inv(R, rows[pivot][col]));
            for (int j = 0; j < width + nrows; ++j)
                if (!rows[pivot][j].zero())
                    rows[s][j] = f_sub(R, rows[s][j], f_mul(R, f, rows[pivot][j]));
        }
    }
    std::vector<std::vector<OreFrac>> kernel;
    for (int s = 0; s < nrows; ++s) {
        if (used[s]) continue;
        bool zero = true;
        for (int j = 0; j < width; ++j) zero &= rows[s][j].zero();
        if (!zero) throw ore_error("elimination left a nonzero unused row");
        kernel.emplace_back(rows[s].begin() + width, rows[s].end());
    }
    return kernel;
}

// Clears denominators on the left and removes the common left factor, giving
// the primitive polynomial vector of the projective class.
inline std::vector<OrePoly> clear_left(const OreRing& R, const std::vector<OreFrac>& U) {
    OrePoly m = OrePoly::constant(1);
    for (const auto& u : U)
        if (!u.zero()) m = left_lcm(R, m, u.den).m;
    std::vector<OrePoly> out;
    for (const auto& u : U) {
        if (u.zero()) {
            out.push_back({});
            continue;
        }
        OrePoly x = right_divide(R, m, u.den).first; // m = x * den
        out.push_back(o_mul(R, x, u.num));
    }
    OrePoly g;
    for (const auto& f : out)
        if (!f.zero()) g = g.zero() ? f : gcld(R, g, f);
    if (g.deg() > 0)
        for (auto& f : out)
            if (!f.zero()) f = left_divide(R, f, g).first;
    return out;
}

// ---------------------------------------------------------------------------
// degree-saturated prime-field linearization (the independent kernel route)
// ---------------------------------------------------------------------------

namespace lin {

// GF(p)-linear maps GF(q) -> GF(q) as k x k digit matrices.
inline std::vector<std::vector<int>> map_of(const OreRing& R, const std::function<int(int)>& f) {
    int k = R.k(), p = R.p();
    std::vector<std::vector<int>> M(k, std::vector<int>(k, 0));
    int basis = 1;
    for (int t = 0; t < k; ++t) {
        int img = f(basis);
        for (int r = 0; r < k; ++r) M[r][t] = R.F->digit(img, r);
        basis *= p;
    }
    return M;
}

struct GFpSystem {
    int p, nvars;
    std::vector<std::vector<int>> rows; // dense mod-p rows

    // kernel basis via Gaussian elimination mod p
    std::vector<std::vector<int>> kernel() const {
        std::vector<std::vector<int>> A = rows;
        int m = (int)A.size();
        std::vector<int> pivot_col;
        int r = 0;
        for (int c = 0; c < nvars && r < m; ++c) {
            int pr = -1;
            for (int i = r; i < m; ++i)
                if (A[i][c]) { pr = i; break; }
            if (pr < 0) continue;
            std::swap(A[r], A[pr]);
            int inv = 1;
            for (int t = 1; t < p; ++t)
                if (t * A[r][c] % p == 1) { inv = t; break; }
            for (int& x : A[r]) x = x * inv % p;
            for (int i = 0; i < m; ++i) {
                if (i == r || !A[i][c]) continue;
                int f = A[i][c];
                for (int j = 0; j < nvars; ++j) A[i][j] = ((A[i][j] - f * A[r][j]) % p + p) % p;
            }
            pivot_col.push_back(c);
            ++r;
        }
        std::vector<char> is_pivot(nvars, 0);
        for (int c : pivot_col) is_pivot[c] = 1;
        std::vector<std::vector<int>> basis;
        for (int c = 0; c < nvars; ++c) {
            if (is_pivot[c]) continue;
            std::vector<int> v(nvars, 0);
            v[c] = 1;
            for (int i = 0; i < (int)pivot_col.size(); ++i)
                v[pivot_col[i]] = (p - A[i][c]) % p;
            basis.push_back(std::move(v));
        }
        return basis;
    }
};

} // namespace lin

// Bounded-degree polynomial kernel via GF(p) linearization.
//   side = left : unknowns U_s with sum_s U_s * A[s][i] = 0  for all i
//   side = right: unknowns C_s with sum_s A[s][i] * C_s = 0  for all i
// (A[s] is the list of constraint polynomials attached to unknown s.)
inline std::vector<std::vector<OrePoly>> linearized_kernel(const OreRing& R,
                                                           const std::vector<std::vector<OrePoly>>& A,
                                                           int deg_bound, bool left_side) {
    int nunk = (int)A.size();
    if (nunk == 0) return {};
    int ncons = (int)A[0].size();
    int k = R.k(), p = R.p();
    int maxdeg = 0;
    for (const auto& row : A)
        for (const auto& f : row) maxdeg = std::max(maxdeg, f.deg());
    int levels = deg_bound + maxdeg + 1;
    lin::GFpSystem sys;
    sys.p = p;
    sys.nvars = nunk * (deg_bound + 1) * k;
    // one GF(p) equation per (constraint, output level, digit)
    std::vector<std::vector<int>> rows;
    for (int i = 0; i < ncons; ++i)
        for (int m = 0; m < levels; ++m) {
            std::vector<std::vector<int>> digit_rows(k, std::vector<int>(sys.nvars, 0));
            bool any = false;
            for (int s = 0; s < nunk; ++s) {
                const OrePoly& a = A[s][i];
                for (int t = 0; t <= deg_bound; ++t) {
                    int j = m - t;
                    int coef = (j >= 0) ? a.at(j) : 0;
                    if (!coef) continue;
                    auto M = left_side
                                 ? lin::map_of(R, [&](int x) { return R.F->mul(x, R.sig(coef, t)); })
                                 : lin::map_of(R, [&](int x) { return R.F->mul(coef, R.sig(x, j)); });
                    int var0 = (s * (deg_bound + 1) + t) * k;
                    for (int r = 0; r < k; ++r)
                        for (int c = 0; c < k; ++c) {
                            if (!M[r][c]) continue;
                            digit_rows[r][var0 + c] = (digit_rows[r][var0 + c] + M[r][c]) % p;
                            any = true;
                        }
                }
            }
            if (any)
                for (auto& dr : digit_rows) rows.push_back(std::move(dr));
        }
    sys.rows = std::move(rows);
    auto basis = sys.kernel();
    std::vector<std::vector<OrePoly>> out;
    for (const auto& v : basis) {
        std::vector<OrePoly> vec;
        for (int s = 0; s < nunk; ++s) {
            std::vector<int> coeffs(deg_bound + 1, 0);
            for (int t = 0; t <= deg_bound; ++t) {
                int idx = 0;
                for (int r = k - 1; r >= 0; --r) idx = idx * p + v[(s * (deg_bound + 1) + t) * k + r];
                coeffs[t] = idx;
            }
            vec.push_back(OrePoly::from(std::move(coeffs)));
        }
        out.push_back(std::move(vec));
    }
    return out;
}

// Degree saturation: raise the bound until the GF(p) kernel dimension grows by
// the same amount twice in a row. Returns {stable skew rank, minimal vector}.
struct OracleKernel {
    int skew_rank = 0;
    std::vector<OrePoly> minimal; // empty when rank 0
};
inline OracleKernel oracle_kernel(const OreRing& R, const std::vector<std::vector<OrePoly>>& A,
                                  bool left_side, bool want_minimal = true, int deg_cap = 48) {
    int maxdeg = 0;
    for (const auto& row : A)
        for (const auto& f : row) maxdeg = std::max(maxdeg, f.deg());
    int start = std::max(2, 2 * maxdeg);
    std::vector<int> dims;
    int D = start;
    auto dim_at = [&](int bound) {
        return (int)linearized_kernel(R, A, bound, left_side).size();
    };
    dims.push_back(dim_at(D));
    for (;;) {
        ++D;
        if (D > deg_cap) throw ore_error("oracle kernel: degree cap exceeded");
        dims.push_back(dim_at(D));
        int m = (int)dims.size();
        if (m >= 3) {
            int d1 = dims[m - 1] - dims[m - 2];
            int d2 = dims[m - 2] - dims[m - 3];
            if (d1 == d2) {
                OracleKernel out;
                out.skew_rank = d1 / R.k();
                if (dims[m - 1] > 0 && want_minimal) {
                    // minimal-degree representative: lowest bound with a nonzero kernel
                    for (int b = 0; b <= D; ++b) {
                        auto ker = linearized_kernel(R, A, b, left_side);
                        if (!ker.empty()) {
                            out.minimal = ker.front();
                            break;
                        }
                    }
                }
                return out;
            }
        }
    }
}

inline int oracle_rank(const OreRing& R, const std::vector<std::vector<OrePoly>>& A, bool left_side) {
    return oracle_kernel(R, A, left_side, false).skew_rank;
}

// ---------------------------------------------------------------------------
// the matroid of a vector family
// ---------------------------------------------------------------------------

struct OreCircuit {
    Mask support = 0;
    std::vector<OrePoly> entries;
};

struct OreMatroidResult {
    OreRing R;
    HF Hmono;
    Matroid N;
    std::vector<OreCircuit> circuits;   // left dependencies, mu-normalized
    std::vector<OreCircuit> cocircuits; // right row combinations, mu-normalized
    Signature mu_circuits;              // left signature over H(T, frob, min)
    Signature mu_cocircuits;            // right signature of N* over the same
};

inline std::vector<std::vector<OreFrac>> family_rows(const OreFamily& V, Mask S) {
    std::vector<std::vector<OreFrac>> rows;
    for (int e = 0; e < V.n(); ++e) {
        if (!((S >> e) & 1)) continue;
        std::vector<OreFrac> row;
        for (int i = 0; i < V.d; ++i) row.push_back(OreFrac::from_poly(V.cols[e][i]));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline bool family_independent(const OreFamily& V, Mask S) {
    if (S == 0) return true;
    return left_kernel(V.R, family_rows(V, S), V.d).empty();
}

// mu-coefficient at the least support element scaled to 1 (left for circuits,
// right for cocircuits).
inline std::vector<OrePoly> mu_normalize(const OreRing& R, std::vector<OrePoly> vec, bool left_side) {
    int e0 = -1;
    for (int e = 0; e < (int)vec.size(); ++e)
        if (!vec[e].zero()) { e0 = e; break; }
    if (e0 < 0) throw ore_error("normalizing the zero vector");
    int m = nu(vec[e0]);
    int a = vec[e0].c[m];
    if (left_side) {
        int c = R.F->inv(a);
        for (auto& f : vec) f = o_scale_left(R, c, f);
    } else {
        int c = R.sig(R.F->inv(a), -m); // a * sig^m(c) = 1
        for (auto& f : vec) f = o_scale_right(R, f, c);
    }
    return vec;
}

inline OreMatroidResult ore_matroid(const OreFamily& V) {
    validate_family(V);
    const OreRing& R = V.R;
    OreMatroidResult out;
    out.R = R;
    out.Hmono = Hyperfield::monomial(Hyperfield::gf(R.p(), R.k()), Automorphism::frobenius_pow(1));
    // underlying matroid from the independence oracle
    int n = V.n();
    int rank = 0;
    std::vector<char> indep(1u << n, 0);
    for (Mask m = 0; m < (1u << n); ++m) {
        bool ok = true;
        // every subset of an independent set is independent; prune upward
        Mask t = m;
        while (t) {
            int e = lowest_bit(t);
            t &= t - 1;
            if (!indep[m & ~(1u << e)] && (m & ~(1u << e)) != 0 && popcount(m) > 1) { ok = false; break; }
        }
        if (ok) ok = family_independent(V, m);
        indep[m] = ok;
        if (ok) rank = std::max(rank, popcount(m));
    }
    std::vector<Mask> bases;
    for (Mask m = 0; m < (1u << n); ++m)
        if (indep[m] && popcount(m) == rank) bases.push_back(m);
    out.N = Matroid::from_bases(V.labels, std::move(bases));

    const HF& HM = out.Hmono;
    std::vector<std::vector<HElem>> mu_circ_vecs, mu_cocirc_vecs;
    for (Mask c : out.N.circuits()) {
        auto ker = left_kernel(R, family_rows(V, c), V.d);
        if (ker.size() != 1) throw ore_error("circuit kernel is not one-dimensional");
        std::vector<OrePoly> cleared = clear_left(R, ker[0]);
        std::vector<OrePoly> full(n);
        int pos = 0;
        for (int e = 0; e < n; ++e)
            if ((c >> e) & 1) full[e] = cleared[pos++];
        full = mu_normalize(R, std::move(full), true);
        std::vector<HElem> mu_vec;
        for (const auto& f : full) mu_vec.push_back(mu_poly(R, HM, f));
        mu_circ_vecs.push_back(std::move(mu_vec));
        out.circuits.push_back({c, std::move(full)});
    }
    // cocircuits: right combinations of the rows vanishing outside the support
    Matroid Nd = out.N.dual();
    for (Mask D : Nd.circuits()) {
        Mask off = out.N.full_mask() & ~D;
        std::vector<std::vector<OrePoly>> A(V.d); // unknown c_i; constraints = columns off the support
        int maxdeg = 0;
        for (int i = 0; i < V.d; ++i) {
            for (int e = 0; e < n; ++e) {
                if ((off >> e) & 1) A[i].push_back(V.cols[e][i]);
                maxdeg = std::max(maxdeg, V.cols[e][i].deg());
            }
            if (off == 0) A[i].push_back({}); // no constraints
        }
        // The kernel can have dimension > 1 when d exceeds the rank. Build the
        // support greedily: each missing element contributes one kernel basis
        // vector, right-scaled by a T-power that avoids the finitely many
        // values cancelling an already-covered entry.
        auto apply = [&](const std::vector<OrePoly>& c) {
            std::vector<OrePoly> Y(n);
            for (int e = 0; e < n; ++e) {
                OrePoly acc;
                for (int i = 0; i < V.d; ++i) acc = o_add(R, acc, o_mul(R, V.cols[e][i], c[i]));
                Y[e] = acc;
            }
            return Y;
        };
        auto support_of = [&](const std::vector<OrePoly>& Y) {
            Mask s = 0;
            for (int e = 0; e < n; ++e)
                if (!Y[e].zero()) s |= 1u << e;
            return s;
        };
        std::vector<OrePoly> Y;
        bool found = false;
        for (int bound = std::max(2, 2 * maxdeg); bound <= 24 && !found; bound += 4) {
            auto basis = linearized_kernel(R, A, bound, false);
            if (basis.empty()) continue;
            std::vector<std::vector<OrePoly>> images;
            for (auto& b : basis) images.push_back(apply(b));
            std::vector<OrePoly> cand(V.d);
            std::vector<OrePoly> candY(n);
            for (int guard = 0; guard <= n; ++guard) {
                Mask have = support_of(candY);
                if (have == D) {
                    Y = candY;
                    found = true;
                    break;
                }
                int e = lowest_bit(D & ~have);
                int pick = -1;
                for (int b = 0; b < (int)basis.size(); ++b)
                    if (!images[b][e].zero()) { pick = b; break; }
                if (pick < 0) break; // bound too small for this element
                for (int j = 0; j <= n + 1; ++j) {
                    OrePoly lam = OrePoly::t_power(j);
                    bool kills = false;
                    std::vector<OrePoly> nextY(n);
                    for (int f = 0; f < n; ++f) {
                        nextY[f] = o_add(R, candY[f], o_mul(R, images[pick][f], lam));
                        if (((have >> f) & 1) && nextY[f].zero()) kills = true;
                    }
                    if (!kills && !nextY[e].zero()) {
                        for (int i = 0; i < V.d; ++i)
                            cand[i] = o_add(R, cand[i], o_mul(R, basis[pick][i], lam));
                        candY = std::move(nextY);
                        break;
                    }
                }
            }
        }
        if (!found) throw ore_error("cocircuit support not realizable at " + out.N.set_str(D));
        // remove the common right factor, then right-normalize
        OrePoly g;
        for (const auto& f : Y)
            if (!f.zero()) g = g.zero() ? f : gcrd(R, g, f);
        if (g.deg() > 0)
            for (auto& f : Y)
                if (!f.zero()) f = right_divide(R, f, g).first;
        Y = mu_normalize(R, std::move(Y), false);
        std::vector<HElem> mu_vec;
        for (const auto& f : Y) mu_vec.push_back(mu_poly(R, HM, f));
        mu_cocirc_vecs.push_back(std::move(mu_vec));
        out.cocircuits.push_back({D, std::move(Y)});
    }
    out.mu_circuits = make_signature(Side::left, HM, out.N, mu_circ_vecs);
    out.mu_cocircuits = make_signature(Side::right, HM, Nd, mu_cocirc_vecs);
    return out;
}

// Exact orthogonality sum_e U_e V_e of polynomial vectors.
inline OrePoly ore_dot(const OreRing& R, const std::vector<OrePoly>& U, const std::vector<OrePoly>& V) {
    OrePoly acc;
    for (size_t e = 0; e < U.size(); ++e) acc = o_add(R, acc, o_mul(R, U[e], V[e]));
    return acc;
}

// Projective comparison: U' = alpha * U (left) or U * alpha (right) over fractions.
inline bool proportional(const OreRing& R, const std::vector<OrePoly>& U,
                         const std::vector<OrePoly>& U2, bool left_side) {
    if (U.size() != U2.size()) return false;
    int e0 = -1;
    for (int e = 0; e < (int)U.size(); ++e) {
        if (U[e].zero() != U2[e].zero()) return false;
        if (!U[e].zero() && e0 < 0) e0 = e;
    }
    if (e0 < 0) return true;
    OreFrac a = OreFrac::from_poly(U[e0]), b = OreFrac::from_poly(U2[e0]);
    if (left_side) {
        OreFrac alpha = f_mul(R, b, f_inv(R, a)); // alpha * U = U2
        for (size_t e = 0; e < U.size(); ++e)
            if (!U[e].zero() &&
                !f_eq(R, f_mul(R, alpha, OreFrac::from_poly(U[e])), OreFrac::from_poly(U2[e])))
                return false;
    } else {
        OreFrac alpha = f_mul(R, f_inv(R, a), b); // U * alpha = U2
        for (size_t e = 0; e < U.size(); ++e)
            if (!U[e].zero() &&
                !f_eq(R, f_mul(R, OreFrac::from_poly(U[e]), alpha), OreFrac::from_poly(U2[e])))
                return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// additive (p-) polynomials
// ---------------------------------------------------------------------------

// sum over variables e of sum_j a_{e,j} X_e^(p^j)
struct AdditivePoly {
    std::map<int, std::map<int, int>> terms; // var -> (j -> nonzero coefficient)

    bool zero() const { return terms.empty(); }
    void set(int var, int j, int coef) {
        if (coef) terms[var][j] = coef;
    }
    friend bool operator==(const AdditivePoly& a, const AdditivePoly& b) { return a.terms == b.terms; }
};

inline AdditivePoly ap_add(const OreRing& R, const AdditivePoly& a, const AdditivePoly& b) {
    AdditivePoly out = a;
    for (const auto& [var, js] : b.terms)
        for (const auto& [j, coef] : js) {
            int& slot = out.terms[var][j];
            slot = R.F->add(slot, coef);
            if (!slot) out.terms[var].erase(j);
        }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second.empty() ? out.terms.erase(it) : std::next(it);
    return out;
}

// hat(f) in the single variable `var`
inline AdditivePoly hat(const OreRing&, const OrePoly& f, int var = 0) {
    AdditivePoly out;
    for (int j = 0; j <= f.deg(); ++j)
        if (f.at(j)) out.set(var, j, f.at(j));
    return out;
}

// psi(v) = sum_i hat(v_i)(z_i) for a column v
inline AdditivePoly psi(const OreRing& R, const std::vector<OrePoly>& column) {
    AdditivePoly out;
    for (int i = 0; i < (int)column.size(); ++i) out = ap_add(R, out, hat(R, column[i], i));
    return out;
}

// q_U = sum_e hat(U_e)(X_e)
inline AdditivePoly q_from_circuit(const OreRing& R, const std::vector<OrePoly>& U) {
    AdditivePoly out;
    for (int e = 0; e < (int)U.size(); ++e) out = ap_add(R, out, hat(R, U[e], e));
    return out;
}

// hat(f) evaluated at an additive polynomial: degrees add, coefficients twist.
inline AdditivePoly ap_compose(const OreRing& R, const OrePoly& f, const AdditivePoly& inner) {
    AdditivePoly out;
    for (int j = 0; j <= f.deg(); ++j) {
        if (!f.at(j)) continue;
        for (const auto& [var, js] : inner.terms)
            for (const auto& [i, b] : js) {
                int coef = R.F->mul(f.at(j), R.sig(b, j));
                int& slot = out.terms[var][i + j];
                slot = R.F->add(slot, coef);
                if (!slot) out.terms[var].erase(i + j);
            }
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second.empty() ? out.terms.erase(it) : std::next(it);
    return out;
}

// d^sigma(q): per variable the minimal p-valuation m_e and the coefficient of
// the separable part, as a monomial-hyperfield vector.
inline std::vector<HElem> sigma_derivative(const OreRing&, const HF& Hmono, const AdditivePoly& q,
                                           int nvars) {
    std::vector<HElem> out(nvars, Hmono->zero());
    for (const auto& [var, js] : q.terms) {
        if (var < 0 || var >= nvars) throw ore_error("sigma_derivative: variable out of range");
        int m = js.begin()->first;
        out[var] = Hmono->mk(js.at(m), m);
    }
    return out;
}

inline std::string ap_print(const OreRing& R, const AdditivePoly& q, const std::string& var_prefix) {
    if (q.zero()) return "0";
    std::string out;
    for (const auto& [var, js] : q.terms)
        for (auto it = js.rbegin(); it != js.rend(); ++it) {
            if (!out.empty()) out += " + ";
            std::string coef = R.F->print(it->second);
            if (coef != "1") {
                if (coef.find('+') != std::string::npos) coef = "(" + coef + ")";
                out += coef + "*";
            }
            out += var_prefix + std::to_string(var + 1);
            if (it->first == 1) out += "^p";
            else if (it->first > 1) out += "^(p^" + std::to_string(it->first) + ")";
        }
    return out;
}

// ---------------------------------------------------------------------------
// quasi-determinants
// ---------------------------------------------------------------------------

// Gauss-Jordan inverse over the fraction field (left row operations).
inline std::vector<std::vector<OreFrac>> frac_inverse(const OreRing& R,
                                                      std::vector<std::vector<OreFrac>> A) {
    int n = (int)A.size();
    for (auto& row : A) {
        if ((int)row.size() != n) throw ore_error("inverse needs a square matrix");
        row.resize(2 * n);
    }
    for (int i = 0; i < n; ++i) A[i][n + i] = OreFrac::from_poly(OrePoly::constant(1));
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        for (int i = col; i < n; ++i)
            if (!A[i][col].zero()) { pr = i; break; }
        if (pr < 0) throw ore_error("matrix is singular");
        std::swap(A[col], A[pr]);
        OreFrac inv = f_inv(R, A[col][col]);
        for (int j = 0; j < 2 * n; ++j) A[col][j] = f_mul(R, inv, A[col][j]);
        for (int i = 0; i < n; ++i) {
            if (i == col || A[i][col].zero()) continue;
            OreFrac f = A[i][col];
            for (int j = 0; j < 2 * n; ++j)
                A[i][j] = f_sub(R, A[i][j], f_mul(R, f, A[col][j]));
        }
    }
    std::vector<std::vector<OreFrac>> B(n);
    for (int i = 0; i < n; ++i) B[i] = std::vector<OreFrac>(A[i].begin() + n, A[i].end());
    return B;
}

// |A|_{ij} as the right-matroid coordinate [J, J-j+i] of M([I | A]).
// Rows are cleared to polynomials on the left (which preserves the right
// kernel), and the circuit with support in J+i is solved on the right.
inline OreFrac quasi_det(const OreRing& R, const std::vector<std::vector<OreFrac>>& A, int i, int j) {
    int n = (int)A.size();
    if (i < 0 || i >= n || j < 0 || j >= n) throw ore_error("quasi_det: index out of range");
    // V = [I | A]; circuit support inside J + i; unknowns X_e for e in J+i.
    // Row r of V restricted to J+i: identity contributes delta_{r,i} at column i.
    std::vector<std::vector<OrePoly>> cols(n + 1); // unknown order: i, then J columns 0..n-1
    for (int r = 0; r < n; ++r) {
        OrePoly lcm = OrePoly::constant(1);
        for (int c = 0; c < n; ++c)
            if (!A[r][c].zero()) lcm = left_lcm(R, lcm, A[r][c].den).m;
        cols[0].push_back(r == i ? lcm : OrePoly{});
        for (int c = 0; c < n; ++c) {
            if (A[r][c].zero()) {
                cols[c + 1].push_back({});
                continue;
            }
            OrePoly x = right_divide(R, lcm, A[r][c].den).first;
            cols[c + 1].push_back(o_mul(R, x, A[r][c].num));
        }
    }
    // right kernel: sum_e col_e * X_e = 0, columns as constraint lists
    std::vector<std::vector<OrePoly>> constraints(n + 1);
    for (int e = 0; e <= n; ++e) constraints[e] = cols[e];
    auto ker = oracle_kernel(R, constraints, false);
    if (ker.skew_rank < 1 || ker.minimal.empty()) throw ore_error("quasi_det: matrix is singular");
    const OrePoly& Xi = ker.minimal[0];
    const OrePoly& Xj = ker.minimal[j + 1];
    if (Xi.zero() || Xj.zero()) throw ore_error("quasi_det: degenerate circuit (singular minor)");
    // right coordinate [J, J-j+i] = -X_i * X_j^{-1}
    OreFrac val = f_mul(R, OreFrac::from_poly(Xi), f_inv(R, OreFrac::from_poly(Xj)));
    return f_normalize(R, f_neg(R, val));
}

} // namespace skewmat
