#pragma once

// Exact arithmetic in GF(p^k) for p^k <= 256, table-driven.
//
// Elements are stored as indices in [0, p^k): the index encodes the
// coefficient vector (c_0, ..., c_{k-1}) of the residue polynomial
// c_0 + c_1 g + ... + c_{k-1} g^{k-1} as sum c_i p^i, where g is the
// class of x modulo the fixed modulus polynomial of the field.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewmat {

struct gf_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Conway polynomials for all (p,k) with p prime, k >= 1 and p^k <= 256.
// Listed low degree first: {c0, c1, ..., c_{k-1}, 1}.
inline const std::vector<int>* conway_modulus(int p, int k) {
    static const std::map<std::pair<int, int>, std::vector<int>> table = {
        {{2, 1}, {1, 1}},
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
        {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {{3, 1}, {1, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}},
        {{3, 5}, {1, 2, 0, 0, 0, 1}},
        {{5, 1}, {3, 1}},
        {{5, 2}, {2, 4, 1}},
        {{5, 3}, {3, 3, 0, 1}},
        {{7, 1}, {4, 1}},
        {{7, 2}, {3, 6, 1}},
        {{11, 1}, {9, 1}},
        {{11, 2}, {2, 7, 1}},
        {{13, 1}, {11, 1}},
        {{13, 2}, {2, 12, 1}},
    };
    auto it = table.find({p, k});
    return it == table.end() ? nullptr : &it->second;
}

} // namespace detail

class GFTable {
public:
    int p = 0, k = 0, q = 0;
    std::vector<int> modulus; // k+1 coefficients, monic

    static std::shared_ptr<const GFTable> make(int p, int k, std::vector<int> modulus = {}) {
        if (!detail::is_prime(p)) throw gf_error("gf: p = " + std::to_string(p) + " is not prime");
        if (k < 1) throw gf_error("gf: k must be >= 1");
        long long q = 1;
        for (int i = 0; i < k; ++i) {
            q *= p;
            if (q > 256) throw gf_error("gf: p^k exceeds the 256 element bound");
        }
        if (modulus.empty()) {
            const auto* m = detail::conway_modulus(p, k);
            if (!m) throw gf_error("gf: no built-in modulus for this (p,k)");
            modulus = *m;
        }
        return std::shared_ptr<const GFTable>(new GFTable(p, k, (int)q, std::move(modulus)));
    }

    // Cached instance with the built-in modulus.
    static std::shared_ptr<const GFTable> get(int p, int k) {
        static std::map<std::pair<int, int>, std::shared_ptr<const GFTable>> cache;
        static std::mutex mtx;
        std::lock_guard<std::mutex> lock(mtx);
        auto& slot = cache[{p, k}];
        if (!slot) slot = make(p, k);
        return slot;
    }

    int add(int x, int y) const { return add_t_[x * q + y]; }
    int sub(int x, int y) const { return add(x, neg(y)); }
    int mul(int x, int y) const { return mul_t_[x * q + y]; }
    int neg(int x) const { return neg_t_[x]; }
    int inv(int x) const {
        if (x == 0) throw gf_error("gf: inverse of zero");
        return inv_t_[x];
    }
    int div(int x, int y) const { return mul(x, inv(y)); }
    // Frobenius x -> x^p, iterated j times (j may be negative).
    int frob(int x, int j = 1) const {
        int r = ((j % k) + k) % k;
        for (int i = 0; i < r; ++i) x = frob_t_[x];
        return x;
    }
    int pow(int x, long long e) const {
        if (x == 0) {
            if (e <= 0) throw gf_error("gf: 0^e with e <= 0");
            return 0;
        }
        long long m = ((e % (q - 1)) + (q - 1)) % (q - 1);
        int r = 1;
        int b = x;
        while (m) {
            if (m & 1) r = mul(r, b);
            b = mul(b, b);
            m >>= 1;
        }
        return r;
    }

    int generator() const { return gen_; } // the class of x ("g")
    int one() const { return 1; }

    int multiplicative_order(int x) const {
        if (x == 0) throw gf_error("gf: order of zero");
        int o = 1, y = x;
        while (y != 1) {
            y = mul(y, x);
            ++o;
        }
        return o;
    }

    bool modulus_irreducible() const;

    // Canonical literal: polynomial in g, highest degree first (plain integer for k = 1).
    std::string print(int x) const {
        if (k == 1) return std::to_string(x);
        if (x == 0) return "0";
        std::string out;
        for (int d = k - 1; d >= 0; --d) {
            int c = digit(x, d);
            if (!c) continue;
            if (!out.empty()) out += "+";
            if (d == 0) {
                out += std::to_string(c);
            } else {
                if (c != 1) out += std::to_string(c) + "*";
                out += (d == 1) ? "g" : "g^" + std::to_string(d);
            }
        }
        return out;
    }

    // Parses integer polynomials in g, e.g. "g^2+2*g+1", "g", "7", "g+1".
    int parse(const std::string& s) const {
        int acc = 0;
        size_t i = 0;
        bool any = false;
        while (i < s.size()) {
            while (i < s.size() && s[i] == ' ') ++i;
            if (i >= s.size()) break;
            int sign = 1;
            if (s[i] == '+') { ++i; }
            else if (s[i] == '-') { sign = -1; ++i; }
            while (i < s.size() && s[i] == ' ') ++i;
            size_t j = i;
            while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
            std::string term = s.substr(i, j - i);
            i = j;
            // term: [int][*][g[^int]]
            long long coef = 1;
            int deg = 0;
            size_t t = 0;
            while (t < term.size() && term[t] == ' ') ++t;
            if (t < term.size() && (isdigit((unsigned char)term[t]))) {
                size_t u = t;
                while (u < term.size() && isdigit((unsigned char)term[u])) ++u;
                coef = std::stoll(term.substr(t, u - t));
                t = u;
                while (t < term.size() && (term[t] == ' ' || term[t] == '*')) ++t;
            }
            if (t < term.size() && term[t] == 'g') {
                ++t;
                deg = 1;
                if (t < term.size() && term[t] == '^') {
                    ++t;
                    size_t u = t;
                    while (u < term.size() && isdigit((unsigned char)term[u])) ++u;
                    if (u == t) throw gf_error("gf: bad exponent in '" + s + "'");
                    deg = std::stoi(term.substr(t, u - t));
                    t = u;
                }
            }
            while (t < term.size() && term[t] == ' ') ++t;
            if (t != term.size()) throw gf_error("gf: bad element literal '" + s + "'");
            long long c = ((coef % p) + p) % p;
            if (sign < 0) c = (p - c) % p;
            int mono = pow_of_g(deg);
            acc = add(acc, mul((int)c, mono));
            any = true;
        }
        if (!any) throw gf_error("gf: empty element literal");
        return acc;
    }

    int digit(int x, int d) const {
        for (int i = 0; i < d; ++i) x /= p;
        return x % p;
    }

private:
    GFTable(int p_, int k_, int q_, std::vector<int> mod) : p(p_), k(k_), q(q_), modulus(std::move(mod)) {
        if ((int)modulus.size() != k + 1) throw gf_error("gf: modulus degree must equal k");
        for (auto& c : modulus) c = ((c % p) + p) % p;
        if (modulus[k] != 1) throw gf_error("gf: modulus must be monic");
        build();
    }

    int pow_of_g(int deg) const {
        int x = 1;
        for (int i = 0; i < deg; ++i) x = mul(x, gen_);
        return x;
    }

    void build() {
        add_t_.resize(q * q);
        mul_t_.resize(q * q);
        neg_t_.resize(q);
        inv_t_.assign(q, 0);
        frob_t_.resize(q);
        auto digits = [&](int x) {
            std::vector<int> d(k);
            for (int i = 0; i < k; ++i) { d[i] = x % p; x /= p; }
            return d;
        };
        auto undigits = [&](const std::vector<int>& d) {
            int x = 0;
            for (int i = k - 1; i >= 0; --i) x = x * p + d[i];
            return x;
        };
        for (int x = 0; x < q; ++x) {
            auto dx = digits(x);
            std::vector<int> dn(k);
            for (int i = 0; i < k; ++i) dn[i] = (p - dx[i]) % p;
            neg_t_[x] = undigits(dn);
            for (int y = 0; y < q; ++y) {
                auto dy = digits(y);
                std::vector<int> ds(k);
                for (int i = 0; i < k; ++i) ds[i] = (dx[i] + dy[i]) % p;
                add_t_[x * q + y] = undigits(ds);
            }
        }
        // polynomial multiplication mod modulus
        for (int x = 0; x < q; ++x) {
            auto dx = digits(x);
            for (int y = 0; y < q; ++y) {
                auto dy = digits(y);
                std::vector<int> prod(2 * k - 1, 0);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + dx[i] * dy[j]) % p;
                for (int d = 2 * k - 2; d >= k; --d) {
                    int c = prod[d];
                    if (!c) continue;
                    prod[d] = 0;
                    for (int i = 0; i < k; ++i)
                        prod[d - k + i] = ((prod[d - k + i] - c * modulus[i]) % p + p) % p;
                }
                prod.resize(k);
                mul_t_[x * q + y] = undigits(prod);
            }
        }
        gen_ = (k == 1) ? (p - modulus[0]) % p : p; // class of x; for k=1 the root of the modulus
        for (int x = 0; x < q; ++x) {
            int y = x;
            for (int i = 1; i < p; ++i) y = mul(y, x);
            frob_t_[x] = y;
        }
        for (int x = 1; x < q; ++x)
            for (int y = 1; y < q; ++y)
                if (mul(x, y) == 1) { inv_t_[x] = y; break; }
        for (int x = 1; x < q; ++x)
            if (inv_t_[x] == 0 || mul(x, inv_t_[x]) != 1)
                throw gf_error("gf: modulus is not irreducible (zero divisor found)");
    }

    std::vector<int> add_t_, mul_t_, neg_t_, inv_t_, frob_t_;
    int gen_ = 0;
};

inline bool GFTable::modulus_irreducible() const {
    // Trial division by all monic polynomials of degree 1..k/2 over GF(p).
    auto mod_reduce = [&](std::vector<int> f, const std::vector<int>& m) {
        int dm = (int)m.size() - 1;
        for (int d = (int)f.size() - 1; d >= dm; --d) {
            int c = f[d];
            if (!c) continue;
            for (int i = 0; i <= dm; ++i) f[d - dm + i] = ((f[d - dm + i] - c * m[i]) % p + p) % p;
        }
        for (int i = 0; i < (int)f.size(); ++i)
            if (i >= dm) f[i] = 0;
        while (f.size() > 1 && f.back() == 0) f.pop_back();
        return f;
    };
    for (int d = 1; 2 * d <= k; ++d) {
        long long cnt = 1;
        for (int i = 0; i < d; ++i) cnt *= p;
        for (long long c = 0; c < cnt; ++c) {
            std::vector<int> cand(d + 1, 0);
            long long t = c;
            for (int i = 0; i < d; ++i) { cand[i] = (int)(t % p); t /= p; }
            cand[d] = 1;
            auto r = mod_reduce(modulus, cand);
            bool zero = true;
            for (int x : r)
                if (x) { zero = false; break; }
            if (zero) return false;
        }
    }
    return true;
}

} // namespace skewmat
