#pragma once

// Plain-text formats: matroid files (ground + basis/circuit lines), signature
// files (side/hyperfield/ground/circuit lines), Ore matrix files, and the
// coordinate and flock dump formats.

#include "skewmat/boundary.hpp"
#include "skewmat/ore.hpp"

#include <istream>
#include <sstream>

namespace skewmat {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace ioutil {

inline std::vector<std::pair<std::string, std::string>> key_lines(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        size_t colon = line.find(':');
        if (colon == std::string::npos) throw parse_error("expected 'key: value' line, got '" + line + "'");
        std::string key = line.substr(0, colon);
        std::string val = line.substr(colon + 1);
        size_t v = val.find_first_not_of(" \t");
        val = v == std::string::npos ? "" : val.substr(v);
        out.emplace_back(key, val);
    }
    return out;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

inline std::vector<std::string> split_semi(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ';') {
            out.push_back(cur);
            cur.clear();
        } else
            cur += c;
    }
    out.push_back(cur);
    for (auto& t : out) {
        size_t a = t.find_first_not_of(" \t");
        size_t b = t.find_last_not_of(" \t");
        t = a == std::string::npos ? "" : t.substr(a, b - a + 1);
    }
    return out;
}

} // namespace ioutil

// ---------------------------------------------------------------------------
// matroid files: `ground: ...` then `basis: ...` or `circuit: ...` lines
// ---------------------------------------------------------------------------

inline Matroid load_matroid(const std::string& text,
                            Matroid::CircuitMode mode = Matroid::CircuitMode::full) {
    auto lines = ioutil::key_lines(text);
    std::vector<std::string> labels;
    std::vector<Mask> bases, circuits;
    for (auto& [key, val] : lines) {
        if (key == "ground") {
            labels = ioutil::split_ws(val);
        } else if (key == "basis" || key == "circuit") {
            if (labels.empty()) throw parse_error("matroid file: 'ground:' must come first");
            Mask m = 0;
            for (const std::string& tok : ioutil::split_ws(val)) {
                auto it = std::find(labels.begin(), labels.end(), tok);
                if (it == labels.end()) throw parse_error("matroid file: unknown element '" + tok + "'");
                m |= 1u << (it - labels.begin());
            }
            (key == "basis" ? bases : circuits).push_back(m);
        } else
            throw parse_error("matroid file: unknown line '" + key + ":'");
    }
    if (labels.empty()) throw parse_error("matroid file: missing 'ground:' line");
    if (!bases.empty() && !circuits.empty())
        throw parse_error("matroid file: use either basis or circuit lines, not both");
    if (!bases.empty()) return Matroid::from_bases(labels, bases);
    return Matroid::from_circuits(labels, circuits, mode);
}

inline std::string dump_matroid(const Matroid& N) {
    std::string out = "ground:";
    for (const auto& l : N.labels) out += " " + l;
    out += "\n";
    for (Mask b : N.bases) out += "basis: " + N.set_str_plain(b) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Ore polynomial literals: `T^3+T^2`, `g*T`, `(g+1)*T^2`, `2*T+1`, `0`
// ---------------------------------------------------------------------------

inline std::string print_ore(const OreRing& R, const OrePoly& f) {
    if (f.zero()) return "0";
    std::string out;
    for (int j = f.deg(); j >= 0; --j) {
        if (!f.at(j)) continue;
        if (!out.empty()) out += "+";
        std::string cl = R.F->print(f.at(j));
        if (j == 0) {
            out += cl;
            continue;
        }
        std::string tp = j == 1 ? "T" : "T^" + std::to_string(j);
        if (cl == "1") {
            out += tp;
        } else {
            if (cl.find('+') != std::string::npos || cl.find('-') != std::string::npos)
                cl = "(" + cl + ")";
            out += cl + "*" + tp;
        }
    }
    return out;
}

inline OrePoly parse_ore(const OreRing& R, const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (c != ' ') s += c;
    if (s.empty()) throw parse_error("empty Ore polynomial literal");
    if (s == "0") return {};
    // split into signed terms at top-level +/- (not inside parens, not after '^')
    std::vector<std::pair<int, std::string>> terms; // sign, body
    int depth = 0;
    std::string cur;
    int sign = 1;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        bool sep = depth == 0 && (c == '+' || c == '-') && i > 0 && s[i - 1] != '^';
        if (sep) {
            terms.emplace_back(sign, cur);
            cur.clear();
            sign = c == '-' ? -1 : 1;
        } else if (i == 0 && c == '-') {
            sign = -1;
        } else if (!(i == 0 && c == '+')) {
            cur += c;
        }
    }
    terms.emplace_back(sign, cur);
    std::vector<int> coeffs;
    auto put = [&](int deg, int val) {
        if (deg >= (int)coeffs.size()) coeffs.resize(deg + 1, 0);
        coeffs[deg] = R.F->add(coeffs[deg], val);
    };
    for (auto& [sg, body] : terms) {
        if (body.empty()) throw parse_error("bad Ore polynomial literal '" + raw + "'");
        // find the T marking the power part (outside parens)
        size_t tpos = std::string::npos;
        int d = 0;
        for (size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '(') ++d;
            if (body[i] == ')') --d;
            if (body[i] == 'T' && d == 0) {
                tpos = i;
                break;
            }
        }
        std::string coef_s;
        int deg = 0;
        if (tpos == std::string::npos) {
            coef_s = body;
        } else {
            coef_s = body.substr(0, tpos);
            if (!coef_s.empty() && coef_s.back() == '*') coef_s.pop_back();
            std::string rest = body.substr(tpos + 1);
            if (rest.empty())
                deg = 1;
            else if (rest[0] == '^') {
                try {
                    deg = std::stoi(rest.substr(1));
                } catch (const std::exception&) {
                    throw parse_error("bad exponent in '" + raw + "'");
                }
                if (deg < 0) throw parse_error("Ore polynomials need exponents >= 0 in '" + raw + "'");
            } else
                throw parse_error("bad Ore term '" + body + "'");
        }
        if (coef_s.empty()) coef_s = "1";
        if (coef_s.size() >= 2 && coef_s.front() == '(' && coef_s.back() == ')')
            coef_s = coef_s.substr(1, coef_s.size() - 2);
        int c;
        try {
            c = R.F->parse(coef_s);
        } catch (const gf_error& e) {
            throw parse_error(e.what());
        }
        if (sg < 0) c = R.F->neg(c);
        put(deg, c);
    }
    return OrePoly::from(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Ore matrix files
// ---------------------------------------------------------------------------

inline OreFamily load_ore_family(const std::string& text) {
    auto lines = ioutil::key_lines(text);
    int p = 0, k = 0;
    std::string modulus;
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> rows;
    for (auto& [key, val] : lines) {
        if (key == "p") p = std::stoi(val);
        else if (key == "k") k = std::stoi(val);
        else if (key == "modulus") modulus = val;
        else if (key == "ground") labels = ioutil::split_ws(val);
        else if (key == "row") rows.push_back(ioutil::split_semi(val));
        else throw parse_error("ore file: unknown line '" + key + ":'");
    }
    if (!p || !k) throw parse_error("ore file: missing p/k header");
    if (rows.empty()) throw parse_error("ore file: no rows");
    OreFamily V;
    try {
        if (modulus.empty()) {
            V.R = OreRing{GFTable::get(p, k)};
        } else {
            auto probe = GFTable::get(p, k);
            std::vector<int> digits(k + 1, 0);
            // modulus given as a polynomial in g; recover integer coefficients
            // by parsing each power separately is fragile, so parse as text:
            // accept the canonical print of the built-in modulus or explicit digits
            std::string canon;
            for (int dg = k; dg >= 0; --dg) {
                int c = probe->modulus[dg];
                if (!c) continue;
                if (!canon.empty()) canon += "+";
                std::string mono = dg == 0 ? "" : (dg == 1 ? "g" : "g^" + std::to_string(dg));
                if (dg == 0) canon += std::to_string(c);
                else canon += (c == 1 ? mono : std::to_string(c) + "*" + mono);
            }
            std::string given;
            for (char c : modulus)
                if (c != ' ') given += c;
            if (given != canon)
                throw parse_error("ore file: modulus '" + modulus + "' differs from the built-in '" +
                                  canon + "' for gf:" + std::to_string(p) + ":" + std::to_string(k));
            V.R = OreRing{probe};
        }
    } catch (const gf_error& e) {
        throw parse_error(e.what());
    }
    V.d = (int)rows.size();
    size_t n = rows[0].size();
    for (auto& r : rows)
        if (r.size() != n) throw parse_error("ore file: ragged rows");
    V.labels = labels.empty() ? Matroid::default_labels((int)n) : labels;
    V.cols.resize(n);
    for (size_t e = 0; e < n; ++e) {
        V.cols[e].resize(V.d);
        for (int i = 0; i < V.d; ++i) V.cols[e][i] = parse_ore(V.R, rows[i][e]);
    }
    validate_family(V);
    return V;
}

inline std::string dump_ore_family(const OreFamily& V) {
    std::string out = "p: " + std::to_string(V.R.p()) + "\nk: " + std::to_string(V.R.k()) + "\n";
    std::string mod;
    for (int dg = V.R.k(); dg >= 0; --dg) {
        int c = V.R.F->modulus[dg];
        if (!c) continue;
        if (!mod.empty()) mod += "+";
        std::string mono = dg == 0 ? "" : (dg == 1 ? "g" : "g^" + std::to_string(dg));
        if (dg == 0) mod += std::to_string(c);
        else mod += (c == 1 ? mono : std::to_string(c) + "*" + mono);
    }
    out += "modulus: " + mod + "\n";
    out += "ground:";
    for (auto& l : V.labels) out += " " + l;
    out += "\n";
    for (int i = 0; i < V.d; ++i) {
        out += "row: ";
        for (int e = 0; e < V.n(); ++e) {
            if (e) out += "; ";
            out += print_ore(V.R, V.cols[e][i]);
        }
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// signature files
// ---------------------------------------------------------------------------

inline Signature load_signature(const std::string& text) {
    auto lines = ioutil::key_lines(text);
    Side side = Side::left;
    HF H;
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> vec_lines;
    for (auto& [key, val] : lines) {
        if (key == "side") {
            if (val == "left") side = Side::left;
            else if (val == "right") side = Side::right;
            else throw parse_error("signature file: side must be left|right");
        } else if (key == "hyperfield") {
            try {
                H = Hyperfield::parse_spec(val);
            } catch (const hf_error& e) {
                throw parse_error(e.what());
            }
        } else if (key == "ground") {
            labels = ioutil::split_ws(val);
        } else if (key == "circuit") {
            vec_lines.push_back(ioutil::split_semi(val));
        } else
            throw parse_error("signature file: unknown line '" + key + ":'");
    }
    if (!H) throw parse_error("signature file: missing 'hyperfield:' line");
    if (labels.empty()) throw parse_error("signature file: missing 'ground:' line");
    if (vec_lines.empty()) throw parse_error("signature file: no circuit lines");
    std::vector<std::vector<HElem>> vecs;
    std::vector<Mask> supports;
    for (auto& toks : vec_lines) {
        if (toks.size() != labels.size())
            throw parse_error("signature file: circuit line has " + std::to_string(toks.size()) +
                              " entries for " + std::to_string(labels.size()) + " elements");
        std::vector<HElem> v;
        Mask supp = 0;
        for (size_t e = 0; e < toks.size(); ++e) {
            HElem x;
            try {
                x = H->parse(toks[e]);
            } catch (const hf_error& err) {
                throw parse_error(err.what());
            }
            if (!x.zero) supp |= 1u << e;
            v.push_back(x);
        }
        vecs.push_back(std::move(v));
        supports.push_back(supp);
    }
    std::sort(supports.begin(), supports.end());
    supports.erase(std::unique(supports.begin(), supports.end()), supports.end());
    Matroid N = Matroid::from_circuits(labels, supports);
    return make_signature(side, H, std::move(N), vecs);
}

inline std::string dump_signature(const Signature& S) {
    std::string out = "side: " + side_name(S.side) + "\n";
    out += "hyperfield: " + S.H->name + "\n";
    out += "ground:";
    for (const auto& l : S.N.labels) out += " " + l;
    out += "\n";
    for (const auto& r : S.reps) {
        out += "circuit: ";
        for (int e = 0; e < S.N.n; ++e) {
            if (e) out += "; ";
            out += S.H->print(r.entries[e]);
        }
        out += "\n";
    }
    return out;
}

// coordinate dump: `1 3 -> 1 4 : g*T`
inline std::string dump_coords(const Coordinates& C) {
    std::string out;
    for (const auto& [pair, v] : C.val) {
        out += C.N.set_str_plain(pair.first) + " -> " + C.N.set_str_plain(pair.second) + " : " +
               C.H->print(v) + "\n";
    }
    return out;
}

// flock dump: one block per alpha
inline std::string dump_flock(const Flock& F) {
    std::string out;
    for (const auto& [alpha, fib] : F.fibers) {
        out += "alpha:";
        for (size_t i = 0; i < alpha.size(); ++i) out += (i ? "," : " ") + std::to_string(alpha[i]);
        out += "\n";
        out += "bases:";
        for (Mask b : fib.N.bases) out += " [" + fib.N.set_str_plain(b) + "]";
        out += "\n";
        out += dump_coords(coords_from_signature(fib));
    }
    return out;
}

} // namespace skewmat
