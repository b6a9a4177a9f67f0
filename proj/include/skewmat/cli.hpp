#pragma once

// Command-line surface. Every subcommand is a thin adapter over one library
// operation; reports are deterministic, with lines prefixed PASS/FAIL/INFO.
// Exit codes: 0 all checks pass, 1 verified mathematical violation (witness
// printed), 2 parse or validation error.

#include "skewmat/io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <functional>
#include <iostream>

namespace skewmat {

namespace cli {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline int report_exit(const Report& rep, std::ostream& out, const std::string& all_pass_note = "") {
    out << rep.to_string();
    if (rep.ok()) {
        if (!all_pass_note.empty()) out << "INFO " << all_pass_note << "\n";
        return 0;
    }
    return 1;
}

inline std::string frac_str(const OreRing& R, const OreFrac& f) {
    if (f.den == OrePoly::constant(1)) return print_ore(R, f.num);
    return "(" + print_ore(R, f.den) + ")^-1*(" + print_ore(R, f.num) + ")";
}

inline void print_ore_result(const OreMatroidResult& res, std::ostream& out) {
    const OreRing& R = res.R;
    out << "INFO underlying matroid: rank " << res.N.rank << ", " << res.N.bases.size()
        << " bases, " << res.N.circuits().size() << " circuits\n";
    out << dump_matroid(res.N);
    auto line = [&](const char* tag, const OreCircuit& c) {
        out << tag << " " << res.N.set_str(c.support) << ":";
        for (int e = 0; e < res.N.n; ++e) out << (e ? "; " : " ") << print_ore(R, c.entries[e]);
        out << "\n";
    };
    for (const auto& c : res.circuits) {
        line("circuit", c);
        out << "mu circuit " << res.N.set_str(c.support) << ":";
        for (int e = 0; e < res.N.n; ++e)
            out << (e ? "; " : " ") << res.Hmono->print(mu_poly(R, res.Hmono, c.entries[e]));
        out << "\n";
    }
    for (const auto& c : res.cocircuits) {
        line("cocircuit", c);
        out << "mu cocircuit " << res.N.set_str(c.support) << ":";
        for (int e = 0; e < res.N.n; ++e)
            out << (e ? "; " : " ") << res.Hmono->print(mu_poly(R, res.Hmono, c.entries[e]));
        out << "\n";
    }
}

} // namespace cli

inline int run_cli(std::vector<std::string> args, std::ostream& out) {
    CLI::App app{"matroids with coefficients in skew hyperfields"};
    app.require_subcommand(1);
    std::function<int()> action;

    unsigned seed = 0x5eed;
    app.add_option("--seed", seed, "seed for randomized suites");

    std::string hf_spec, path, level = "C", hom_name, rho_list, contract_s, delete_s, a_lit = "g";
    int depth = 3, window = 2, budget = 2, qi = 1, qj = 1, p = 2, kk = 2;

    // hf check | hf table
    auto* hf = app.add_subcommand("hf", "hyperfield instances");
    hf->require_subcommand(1);
    auto* hf_check = hf->add_subcommand("check", "verify the hyperfield axioms");
    hf_check->add_option("spec", hf_spec)->required();
    hf_check->add_option("--budget", budget, "level window half-width for infinite carriers");
    hf_check->callback([&] {
        action = [&]() -> int {
            HF H = Hyperfield::parse_spec(hf_spec);
            return cli::report_exit(axiom_check_hyperfield(H, budget), out, "all axioms pass");
        };
    });
    auto* hf_table = hf->add_subcommand("table", "print multiplication and hyperaddition tables");
    hf_table->add_option("spec", hf_spec)->required();
    hf_table->callback([&] {
        action = [&]() -> int {
            HF H = Hyperfield::parse_spec(hf_spec);
            if (!H->finite_carrier()) throw parse_error("table requires a finite carrier");
            auto elems = H->elements();
            out << "INFO hyperfield " << H->name << " (" << elems.size() << " elements)\n";
            for (const HElem& x : elems)
                for (const HElem& y : elems)
                    out << H->print(x) << "*" << H->print(y) << " = " << H->print(H->mul(x, y))
                        << "\n";
            for (const HElem& x : elems)
                for (const HElem& y : elems)
                    out << H->print(x) << "+" << H->print(y) << " = "
                        << print_hset(*H, H->add(x, y)) << "\n";
            return 0;
        };
    });

    // matroid check
    auto* mat = app.add_subcommand("matroid", "ordinary matroids");
    mat->require_subcommand(1);
    auto* mat_check = mat->add_subcommand("check", "validate a matroid file");
    mat_check->add_option("file", path)->required();
    mat_check->callback([&] {
        action = [&]() -> int {
            Matroid N = load_matroid(cli::slurp(path));
            out << "PASS matroid axioms\n";
            out << "INFO rank " << N.rank << ", " << N.bases.size() << " bases, "
                << N.circuits().size() << " circuits\n";
            return 0;
        };
    });

    // hsig subcommands
    auto* hsig = app.add_subcommand("hsig", "signatures over a hyperfield");
    hsig->require_subcommand(1);
    auto add_sig_input = [&](CLI::App* cmd) {
        cmd->add_option("file", path);
        cmd->add_option("--circuits", path, "signature file");
        cmd->add_option("--hf", hf_spec, "expected hyperfield spec (cross-checked)");
    };
    auto load_sig = [&]() {
        if (path.empty()) throw parse_error("missing signature file");
        Signature S = load_signature(cli::slurp(path));
        if (!hf_spec.empty() && S.H->name != hf_spec)
            throw parse_error("signature hyperfield " + S.H->name + " differs from --hf " + hf_spec);
        return S;
    };

    auto* hs_coords = hsig->add_subcommand("coords", "coordinate dump");
    add_sig_input(hs_coords);
    hs_coords->callback([&] {
        action = [&]() -> int {
            out << dump_coords(coords_from_signature(load_sig()));
            return 0;
        };
    });

    auto* hs_check = hsig->add_subcommand("check", "axiom checkers");
    add_sig_input(hs_check);
    hs_check->add_option("--level", level, "C (circuit), CC (coordinate), or P (quasi-Pluecker)");
    hs_check->callback([&] {
        action = [&]() -> int {
            Signature S = load_sig();
            Report rep;
            if (level == "C") rep = check_circuit_axioms(S);
            else if (level == "CC") rep = check_cc_axioms(coords_from_signature(S));
            else if (level == "P") rep = check_plucker(coords_from_signature(S));
            else throw parse_error("--level must be C, CC, or P");
            return cli::report_exit(rep, out, "all axioms pass");
        };
    });

    auto* hs_dual = hsig->add_subcommand("dual", "dual signature");
    add_sig_input(hs_dual);
    hs_dual->add_option("--k", depth, "orthogonality depth to verify");
    hs_dual->callback([&] {
        action = [&]() -> int {
            Signature S = load_sig();
            Report prep = check_plucker(coords_from_signature(S));
            if (!prep.ok()) {
                out << prep.to_string();
                return 1;
            }
            Signature D = dual_matroid(S);
            out << dump_signature(D);
            Report orth = orthogonality_check(S.side == Side::left ? S : D,
                                              S.side == Side::left ? D : S, depth);
            return cli::report_exit(orth, out);
        };
    });

    auto* hs_minor = hsig->add_subcommand("minor", "contract and delete");
    add_sig_input(hs_minor);
    hs_minor->add_option("--contract", contract_s, "elements to contract");
    hs_minor->add_option("--delete", delete_s, "elements to delete");
    hs_minor->callback([&] {
        action = [&]() -> int {
            Signature S = load_sig();
            Mask C = S.N.parse_set(contract_s);
            Mask T = S.N.parse_set(delete_s);
            out << dump_signature(minor_signature(S, C, T));
            return 0;
        };
    });

    auto* hs_rescale = hsig->add_subcommand("rescale", "rescale by rho");
    add_sig_input(hs_rescale);
    hs_rescale->add_option("--rho", rho_list, "semicolon-separated nonzero elements")->required();
    hs_rescale->callback([&] {
        action = [&]() -> int {
            Signature S = load_sig();
            std::vector<HElem> rho;
            try {
                for (const std::string& tok : ioutil::split_semi(rho_list))
                    rho.push_back(S.H->parse(tok));
            } catch (const hf_error& e) {
                throw parse_error(e.what());
            }
            if ((int)rho.size() != S.N.n) throw parse_error("--rho needs one entry per element");
            out << dump_signature(rescale(S, rho));
            return 0;
        };
    });

    auto* hs_push = hsig->add_subcommand("push", "push forward along a homomorphism");
    add_sig_input(hs_push);
    hs_push->add_option("--hom", hom_name, "kappa or zeta")->required();
    hs_push->callback([&] {
        action = [&]() -> int {
            Signature S = load_sig();
            Hom f = hom_name == "kappa" ? Hom::kappa(S.H)
                    : hom_name == "zeta" ? Hom::zeta(S.H)
                                         : throw parse_error("--hom must be kappa or zeta");
            out << dump_signature(pushforward(f, S));
            return 0;
        };
    });

    auto* hs_cr = hsig->add_subcommand("crossratio", "cross ratios and their properties");
    add_sig_input(hs_cr);
    hs_cr->callback([&] {
        action = [&]() -> int {
            Signature S = load_sig();
            Coordinates C = coords_from_signature(S);
            if (S.N.rank >= 2)
                detail::TupleIter{S.N, S.N.rank - 2, 4}.run([&](Mask F, const std::vector<int>& v) {
                    CrossRatioFrame fr{F, v[0], v[1], v[2], v[3]};
                    if (!frame_in_crn(S.N, fr)) return;
                    out << "cr(" << S.N.set_str(F) << "; " << S.N.labels[v[0]] << ","
                        << S.N.labels[v[1]] << "," << S.N.labels[v[2]] << "," << S.N.labels[v[3]]
                        << ") = " << S.H->print(cross_ratio(C, fr)) << "\n";
                });
            return cli::report_exit(cr_properties_check(S), out, "all cross-ratio properties pass");
        };
    });

    auto* hs_u24 = hsig->add_subcommand("u24", "normal form of a U(2,4) signature");
    add_sig_input(hs_u24);
    hs_u24->callback([&] {
        action = [&]() -> int {
            Signature S = load_sig();
            auto [x, y] = u24_classify(S);
            out << "INFO normal form x = " << S.H->print(x) << ", y = " << S.H->print(y) << "\n";
            if (S.H->finite_carrier()) {
                auto orbit = u24_orbit(S.H, x, y);
                out << "INFO conjugacy orbit size " << orbit.size() << "\n";
                for (auto& [ox, oy] : orbit)
                    out << "orbit: (" << S.H->print(ox) << ", " << S.H->print(oy) << ")\n";
            }
            return 0;
        };
    });

    // boundary
    auto* bnd = app.add_subcommand("boundary", "boundary matroid of a monomial signature");
    bnd->add_option("file", path)->required();
    bnd->callback([&] {
        action = [&]() -> int {
            Signature S = load_signature(cli::slurp(path));
            Signature B = boundary_matroid(S);
            out << dump_signature(B);
            out << "INFO boundary bases:";
            for (Mask b : B.N.bases) out << " [" << B.N.set_str_plain(b) << "]";
            out << "\n";
            return 0;
        };
    });

    // flock
    auto* flk = app.add_subcommand("flock", "flock of boundary matroids over a window");
    flk->add_option("file", path)->required();
    flk->add_option("--window", window, "window half-width");
    flk->callback([&] {
        action = [&]() -> int {
            Signature S = load_signature(cli::slurp(path));
            Flock F = flock_window(S, window);
            out << dump_flock(F);
            return cli::report_exit(check_flock(F), out, "flock axioms pass");
        };
    });

    // ore matroid | ore quasidet
    auto* ore = app.add_subcommand("ore", "Ore vector families");
    ore->require_subcommand(1);
    auto* ore_mat = ore->add_subcommand("matroid", "circuits, cocircuits and mu-images");
    ore_mat->add_option("file", path)->required();
    ore_mat->callback([&] {
        action = [&]() -> int {
            OreMatroidResult res = ore_matroid(load_ore_family(cli::slurp(path)));
            cli::print_ore_result(res, out);
            return 0;
        };
    });
    auto* ore_qd = ore->add_subcommand("quasidet", "quasi-determinant of a square matrix");
    ore_qd->add_option("file", path)->required();
    ore_qd->add_option("--i", qi, "row index (1-based)")->required();
    ore_qd->add_option("--j", qj, "column index (1-based)")->required();
    ore_qd->callback([&] {
        action = [&]() -> int {
            OreFamily V = load_ore_family(cli::slurp(path));
            if (V.d != V.n()) throw parse_error("quasidet needs a square matrix");
            if (qi < 1 || qi > V.d || qj < 1 || qj > V.d)
                throw parse_error("indices out of range");
            std::vector<std::vector<OreFrac>> A(V.d, std::vector<OreFrac>(V.d));
            for (int r = 0; r < V.d; ++r)
                for (int c = 0; c < V.d; ++c) A[r][c] = OreFrac::from_poly(V.cols[c][r]);
            OreFrac qd = quasi_det(V.R, A, qi - 1, qj - 1);
            out << "quasidet[" << qi << "][" << qj << "] = " << cli::frac_str(V.R, qd) << "\n";
            return 0;
        };
    });

    // example section5
    auto* ex = app.add_subcommand("example", "worked examples");
    ex->require_subcommand(1);
    auto* ex5 = ex->add_subcommand("section5", "the rank-2 four-column family end to end");
    ex5->add_option("--p", p, "characteristic")->required();
    ex5->add_option("--k", kk, "extension degree")->required();
    ex5->add_option("--a", a_lit, "the parameter a (field literal)");
    ex5->callback([&] {
        action = [&]() -> int {
            OreRing R{GFTable::get(p, kk)};
            int a;
            try {
                a = R.F->parse(a_lit);
            } catch (const gf_error& e) {
                throw parse_error(e.what());
            }
            if (a == 0) throw parse_error("a must be nonzero");
            OreFamily V;
            V.R = R;
            V.d = 2;
            V.labels = {"1", "2", "3", "4"};
            V.cols = {{OrePoly::constant(1), {}},
                      {{}, OrePoly::t_power(3)},
                      {o_add(R, OrePoly::t_power(2), OrePoly::t_power(1)), OrePoly::t_power(2)},
                      {OrePoly::constant(1), o_add(R, OrePoly::t_power(4), OrePoly::t_power(1, a))}};
            out << dump_ore_family(V);
            OreMatroidResult res = ore_matroid(V);
            cli::print_ore_result(res, out);
            // the algebraic relation of the {1,2,3} circuit and its derivative
            const OreCircuit* c123 = nullptr;
            for (const auto& c : res.circuits)
                if (c.support == 0b0111) c123 = &c;
            if (!c123) throw sig_error("no circuit on {1,2,3}");
            AdditivePoly q = q_from_circuit(R, c123->entries);
            out << "q_U = " << ap_print(R, q, "X") << "\n";
            std::vector<HElem> ds = sigma_derivative(R, res.Hmono, q, 4);
            out << "d_sigma(q_U) =";
            for (int e = 0; e < 4; ++e) out << (e ? "; " : " ") << res.Hmono->print(ds[e]);
            out << "\n";
            std::vector<HElem> mu;
            for (const auto& f : c123->entries) mu.push_back(mu_poly(R, res.Hmono, f));
            out << (ds == mu ? "PASS" : "FAIL") << " d_sigma(q_U) = mu_* U\n";
            HElem cr = cross_ratio(res.mu_circuits, CrossRatioFrame{0, 0, 1, 2, 3});
            out << "cross_ratio({}; 1,2,3,4) = " << res.Hmono->print(cr) << "\n";
            return ds == mu ? 0 : 1;
        };
    });

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        out << "ERROR: " << e.what() << "\n";
        return 2;
    }
    try {
        return action();
    } catch (const parse_error& e) {
        out << "ERROR: " << e.what() << "\n";
        return 2;
    } catch (const gf_error& e) {
        out << "ERROR: " << e.what() << "\n";
        return 2;
    } catch (const hf_error& e) {
        out << "ERROR: " << e.what() << "\n";
        return 2;
    } catch (const matroid_error& e) {
        out << "FAIL " << e.what() << "\n";
        return 1;
    } catch (const sig_error& e) {
        out << "FAIL " << e.what() << "\n";
        return 1;
    } catch (const ore_error& e) {
        out << "FAIL " << e.what() << "\n";
        return 1;
    }
}

} // namespace skewmat
