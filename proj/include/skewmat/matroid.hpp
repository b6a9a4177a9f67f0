#pragma once

// Ordinary matroids on ground sets of at most 16 elements, stored as a basis
// family of bitmasks. Circuits, duality, minors and the modular-elimination
// variant of the circuit axioms are derived from the basis family.

#include "skewmat/report.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewmat {

struct matroid_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Mask = uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }
inline int lowest_bit(Mask m) { return std::countr_zero(m); }

class Matroid {
public:
    int n = 0;
    std::vector<std::string> labels;
    std::vector<Mask> bases; // sorted
    int rank = 0;

    Matroid() = default;

    static std::vector<std::string> default_labels(int n) {
        std::vector<std::string> l;
        for (int i = 1; i <= n; ++i) l.push_back(std::to_string(i));
        return l;
    }

    // Validates the basis-exchange axiom; throws with a witness pair.
    static Matroid from_bases(std::vector<std::string> labels, std::vector<Mask> bases) {
        Matroid M;
        M.n = (int)labels.size();
        if (M.n > 16) throw matroid_error("ground set capped at 16 elements");
        M.labels = std::move(labels);
        std::sort(bases.begin(), bases.end());
        bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
        if (bases.empty()) throw matroid_error("empty basis family");
        M.bases = std::move(bases);
        M.rank = popcount(M.bases[0]);
        for (Mask b : M.bases) {
            if (b >= (1u << M.n)) throw matroid_error("basis outside ground set");
            if (popcount(b) != M.rank) throw matroid_error("bases are not equicardinal");
        }
        for (Mask B : M.bases)
            for (Mask B2 : M.bases) {
                Mask out = B & ~B2;
                while (out) {
                    int x = lowest_bit(out);
                    out &= out - 1;
                    bool found = false;
                    Mask in = B2 & ~B;
                    Mask cand = B & ~(1u << x);
                    while (in) {
                        int y = lowest_bit(in);
                        in &= in - 1;
                        if (M.has_basis(cand | (1u << y))) { found = true; break; }
                    }
                    if (!found)
                        throw matroid_error("basis exchange fails for B=" + M.set_str(B) +
                                            ", B'=" + M.set_str(B2) + ", x=" + M.labels[x]);
                }
            }
        M.build_independence();
        return M;
    }

    enum class CircuitMode { full, modular };

    // Validates (MC0), (MC1) and (MC2) or (MC2)', then reconstructs the
    // matroid from its independent sets.
    static Matroid from_circuits(std::vector<std::string> labels, std::vector<Mask> circuits,
                                 CircuitMode mode = CircuitMode::full) {
        int n = (int)labels.size();
        if (n > 16) throw matroid_error("ground set capped at 16 elements");
        std::sort(circuits.begin(), circuits.end());
        circuits.erase(std::unique(circuits.begin(), circuits.end()), circuits.end());
        Matroid probe;
        probe.n = n;
        probe.labels = labels;
        for (Mask c : circuits) {
            if (c == 0) throw matroid_error("(MC0) fails: empty circuit");
            if (c >= (1u << n)) throw matroid_error("circuit outside ground set");
        }
        for (Mask c : circuits)
            for (Mask c2 : circuits)
                if (c != c2 && (c & ~c2) == 0)
                    throw matroid_error("(MC1) fails: " + probe.set_str(c) + " inside " + probe.set_str(c2));
        for (size_t i = 0; i < circuits.size(); ++i)
            for (size_t j = 0; j < circuits.size(); ++j) {
                if (i == j) continue;
                Mask C = circuits[i], C2 = circuits[j];
                if (mode == CircuitMode::modular && !modular_in(circuits, C, C2)) continue;
                Mask meet = C & C2;
                Mask uni = C | C2;
                Mask m = meet;
                while (m) {
                    int e = lowest_bit(m);
                    m &= m - 1;
                    bool found = false;
                    for (Mask c3 : circuits)
                        if (!(c3 & (1u << e)) && (c3 & ~uni) == 0) { found = true; break; }
                    if (!found)
                        throw matroid_error(std::string(mode == CircuitMode::full ? "(MC2)" : "(MC2)'") +
                                            " fails: C=" + probe.set_str(C) + " C'=" + probe.set_str(C2) +
                                            " e=" + probe.labels[e]);
                }
            }
        // independent = contains no circuit; bases = maximal independent
        std::vector<char> indep(1u << n, 1);
        for (Mask c : circuits)
            for (Mask m = c; m < (1u << n); m = (m + 1) | c)
                indep[m] = 0;
        int r = 0;
        for (Mask m = 0; m < (1u << n); ++m)
            if (indep[m]) r = std::max(r, popcount(m));
        std::vector<Mask> bases;
        for (Mask m = 0; m < (1u << n); ++m)
            if (indep[m] && popcount(m) == r) bases.push_back(m);
        Matroid M = from_bases(std::move(labels), std::move(bases));
        if (!(M.circuits() == circuits))
            throw matroid_error("circuit family is not matroidal (reconstruction mismatch)");
        return M;
    }

    static Matroid uniform(int r, int n, std::vector<std::string> labels = {}) {
        if (labels.empty()) labels = default_labels(n);
        std::vector<Mask> bases;
        for (Mask m = 0; m < (1u << n); ++m)
            if (popcount(m) == r) bases.push_back(m);
        return from_bases(std::move(labels), std::move(bases));
    }

    bool has_basis(Mask b) const { return std::binary_search(bases.begin(), bases.end(), b); }
    bool independent(Mask m) const { return indep_[m]; }
    bool dependent(Mask m) const { return !indep_[m]; }

    int rank_of(Mask m) const {
        int best = 0;
        for (Mask b : bases) best = std::max(best, popcount(b & m));
        return best;
    }

    Mask full_mask() const { return (n == 32) ? ~0u : ((1u << n) - 1); }

    const std::vector<Mask>& circuits() const {
        if (!circuits_) {
            std::vector<Mask> out;
            for (Mask m = 1; m <= full_mask(); ++m) {
                if (indep_[m]) continue;
                bool minimal = true;
                Mask t = m;
                while (t) {
                    int e = lowest_bit(t);
                    t &= t - 1;
                    if (!indep_[m & ~(1u << e)]) { minimal = false; break; }
                }
                if (minimal) out.push_back(m);
            }
            circuits_ = std::move(out);
        }
        return *circuits_;
    }

    Matroid dual() const {
        std::vector<Mask> db;
        for (Mask b : bases) db.push_back(full_mask() & ~b);
        return from_bases(labels, std::move(db));
    }

    std::vector<Mask> cocircuits() const { return dual().circuits(); }
    std::vector<Mask> hyperplanes() const {
        std::vector<Mask> out;
        for (Mask c : cocircuits()) out.push_back(full_mask() & ~c);
        std::sort(out.begin(), out.end());
        return out;
    }

    // Contract S, delete T. Keeps the surviving labels; old_index() on the
    // result maps back into this matroid's ground set.
    Matroid minor(Mask S, Mask T) const {
        if (S & T) throw matroid_error("contract and delete sets overlap");
        Mask keep = full_mask() & ~(S | T);
        // greedy maximal independent subset of S
        Mask bs = 0;
        Mask s = S;
        while (s) {
            int e = lowest_bit(s);
            s &= s - 1;
            if (indep_[bs | (1u << e)]) bs |= 1u << e;
        }
        std::vector<int> old_of;
        std::vector<std::string> sub_labels;
        for (int e = 0; e < n; ++e)
            if (keep & (1u << e)) {
                old_of.push_back(e);
                sub_labels.push_back(labels[e]);
            }
        int m = (int)old_of.size();
        auto to_old = [&](Mask sub) {
            Mask out = 0;
            for (int i = 0; i < m; ++i)
                if (sub & (1u << i)) out |= 1u << old_of[i];
            return out;
        };
        int r = 0;
        std::vector<char> ind(1u << m, 0);
        for (Mask sub = 0; sub < (1u << m); ++sub) {
            ind[sub] = indep_[to_old(sub) | bs];
            if (ind[sub]) r = std::max(r, popcount(sub));
        }
        std::vector<Mask> nb;
        for (Mask sub = 0; sub < (1u << m); ++sub)
            if (ind[sub] && popcount(sub) == r) nb.push_back(sub);
        Matroid out = from_bases(std::move(sub_labels), std::move(nb));
        out.old_index_ = std::move(old_of);
        return out;
    }

    // Mapping of this matroid's elements back to the parent it was cut from.
    const std::vector<int>& old_index() const { return old_index_; }

    std::vector<std::pair<Mask, Mask>> adjacent_bases() const {
        std::vector<std::pair<Mask, Mask>> out;
        for (Mask b : bases)
            for (Mask b2 : bases)
                if (b != b2 && popcount(b & ~b2) == 1) out.emplace_back(b, b2);
        return out;
    }

    bool is_modular_pair(Mask C, Mask C2) const { return modular_in(circuits(), C, C2); }

    static bool modular_in(const std::vector<Mask>& circuits, Mask C, Mask C2) {
        if (C == C2) return false;
        Mask uni = C | C2;
        for (Mask D : circuits)
            for (Mask D2 : circuits) {
                if (D == D2) continue;
                Mask u = D | D2;
                if ((u & ~uni) == 0 && u != uni) return false;
            }
        return true;
    }

    // True iff every dependent set of N is dependent in N2.
    static bool weak_image(const Matroid& N, const Matroid& N2) {
        if (N.n != N2.n) throw matroid_error("weak_image: ground sets differ");
        for (Mask c : N.circuits())
            if (N2.independent(c)) return false;
        return true;
    }

    friend bool operator==(const Matroid& a, const Matroid& b) {
        return a.labels == b.labels && a.bases == b.bases;
    }

    std::string set_str(Mask m) const {
        std::string out = "{";
        bool first = true;
        for (int e = 0; e < n; ++e)
            if (m & (1u << e)) {
                if (!first) out += ",";
                out += labels[e];
                first = false;
            }
        return out + "}";
    }
    std::string set_str_plain(Mask m) const {
        std::string out;
        for (int e = 0; e < n; ++e)
            if (m & (1u << e)) {
                if (!out.empty()) out += " ";
                out += labels[e];
            }
        return out;
    }

    int index_of_label(const std::string& l) const {
        for (int i = 0; i < n; ++i)
            if (labels[i] == l) return i;
        throw matroid_error("unknown ground element '" + l + "'");
    }
    Mask parse_set(const std::string& s) const {
        Mask m = 0;
        std::stringstream ss(s);
        std::string tok;
        while (ss >> tok) {
            std::stringstream ts(tok);
            std::string sub;
            while (std::getline(ts, sub, ','))
                if (!sub.empty()) m |= 1u << index_of_label(sub);
        }
        return m;
    }

private:
    void build_independence() {
        indep_.assign(1u << n, 0);
        for (Mask m = 0; m <= full_mask(); ++m)
            for (Mask b : bases)
                if ((m & ~b) == 0) { indep_[m] = 1; break; }
    }

    std::vector<char> indep_;
    mutable std::optional<std::vector<Mask>> circuits_;
    std::vector<int> old_index_;
};

} // namespace skewmat
