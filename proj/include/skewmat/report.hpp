#pragma once

#include <string>
#include <vector>

namespace skewmat {

// Outcome of an axiom or property checker: one line per check, a failing
// line carries a concrete witness.
struct Report {
    struct Line {
        std::string check;
        bool pass = true;
        std::string witness;
    };
    std::vector<Line> lines;

    void add(std::string check, bool pass, std::string witness = "") {
        lines.push_back({std::move(check), pass, std::move(witness)});
    }
    // Records only the first failure per check name to keep reports short.
    void fail_once(const std::string& check, const std::string& witness) {
        for (auto& l : lines)
            if (l.check == check) {
                if (l.pass) {
                    l.pass = false;
                    l.witness = witness;
                }
                return;
            }
        add(check, false, witness);
    }
    void pass_if_absent(const std::string& check) {
        for (auto& l : lines)
            if (l.check == check) return;
        add(check, true);
    }
    bool ok() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
    const Line* first_fail() const {
        for (const auto& l : lines)
            if (!l.pass) return &l;
        return nullptr;
    }
    std::string to_string() const {
        std::string out;
        for (const auto& l : lines) {
            out += l.pass ? "PASS " : "FAIL ";
            out += l.check;
            if (!l.pass && !l.witness.empty()) out += ": " + l.witness;
            out += "\n";
        }
        return out;
    }
};

} // namespace skewmat
