#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "veriforge/corpus.hpp"
#include "veriforge/lexer.hpp"

namespace veriforge {

struct LintViolation {
    std::string rule;
    int line = 0;
    std::string message;
};

struct StyleVerdict {
    bool passed = true;
    std::vector<LintViolation> violations;

    static StyleVerdict from_violations(std::vector<LintViolation> v) {
        StyleVerdict verdict;
        verdict.passed = v.empty();
        verdict.violations = std::move(v);
        return verdict;
    }
};

// Versioned rule selection. Rules are config, not hardcoded truth: a rules
// file can disable any of them.
//   R1  module names are lower_snake_case
//   R2  no #delay outside initial blocks
//   R3  clocked always blocks use non-blocking assignment
//   R4  every declared port is referenced in the module body
struct LintRuleSet {
    std::string version = "v1";
    bool r1 = true;
    bool r2 = true;
    bool r3 = true;
    bool r4 = true;

    static LintRuleSet defaults() { return {}; }

    static LintRuleSet from_json(const json& j) {
        LintRuleSet rules;
        rules.r1 = rules.r2 = rules.r3 = rules.r4 = false;
        if (j.contains("version")) rules.version = j.at("version").get<std::string>();
        for (const auto& id : j.at("enabled")) {
            std::string name = id.get<std::string>();
            if (name == "R1") rules.r1 = true;
            else if (name == "R2") rules.r2 = true;
            else if (name == "R3") rules.r3 = true;
            else if (name == "R4") rules.r4 = true;
            else throw std::invalid_argument("unknown lint rule '" + name + "'");
        }
        return rules;
    }

    static LintRuleSet from_file(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw io_error("cannot open rules file: " + path.string());
        json j = json::parse(in);
        return from_json(j);
    }
};

namespace detail {

inline bool is_lower_snake_case(const std::string& name) {
    if (name.empty() || !(name[0] >= 'a' && name[0] <= 'z')) return false;
    for (char c : name) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return true;
}

inline bool is_decl_keyword(const std::string& word) {
    static const std::unordered_set<std::string> decl = {
        "input", "output", "inout", "wire", "reg", "logic", "integer", "real",
        "realtime", "time", "genvar", "parameter", "localparam", "tri", "tri0",
        "tri1", "supply0", "supply1", "event", "wand", "wor", "trireg",
    };
    return decl.count(word) > 0;
}

// Token-index walker shared by the structural rules.
class LintWalker {
public:
    LintWalker(const std::vector<Token>& tokens) : toks_(tokens) {}

    struct Range {
        std::size_t begin = 0, end = 0; // token index range [begin, end)
        bool contains(std::size_t i) const { return i >= begin && i < end; }
    };

    std::vector<Range> initial_ranges;
    std::vector<Range> clocked_always_ranges;
    std::vector<Range> for_header_ranges;

    struct ModuleInfo {
        std::string name;
        int name_line = 0;
        std::vector<std::pair<std::string, int>> ports; // name, line
        std::size_t body_begin = 0, body_end = 0;
    };
    std::vector<ModuleInfo> modules;

    void walk() {
        // for-headers register in a dedicated pass so nesting cannot hide them
        for (std::size_t i = 0; i + 1 < toks_.size(); ++i) {
            if (is_kw(i, "for") && is_op(i + 1, "(")) {
                for_header_ranges.push_back({i + 1, skip_parens(i + 1)});
            }
        }
        for (std::size_t i = 0; i < toks_.size(); ++i) {
            if (is_kw(i, "module")) i = scan_module(i);
        }
    }

    const std::vector<Token>& tokens() const { return toks_; }

private:
    const std::vector<Token>& toks_;

    bool is_kw(std::size_t i, std::string_view word) const {
        return i < toks_.size() && toks_[i].cls == TokenClass::Keyword && toks_[i].text == word;
    }
    bool is_op(std::size_t i, std::string_view op) const {
        return i < toks_.size() && toks_[i].cls == TokenClass::Operator && toks_[i].text == op;
    }
    bool is_ident(std::size_t i) const {
        return i < toks_.size() && toks_[i].cls == TokenClass::Identifier;
    }

    // Returns the index just past the matching close paren for the open paren at i.
    std::size_t skip_parens(std::size_t i) const {
        int depth = 0;
        for (; i < toks_.size(); ++i) {
            if (is_op(i, "(")) ++depth;
            else if (is_op(i, ")") && --depth == 0) return i + 1;
        }
        return toks_.size();
    }

    // Generic statement scanner: begin/end, fork/join, case/endcase,
    // if/else, loop headers, otherwise up to the next ';'.
    std::size_t scan_statement(std::size_t i) {
        if (i >= toks_.size()) return i;
        if (is_kw(i, "begin")) {
            int depth = 0;
            for (; i < toks_.size(); ++i) {
                if (is_kw(i, "begin") || is_kw(i, "fork")) ++depth;
                else if ((is_kw(i, "end") || is_kw(i, "join")) && --depth == 0) return i + 1;
            }
            return toks_.size();
        }
        if (is_kw(i, "fork")) {
            int depth = 0;
            for (; i < toks_.size(); ++i) {
                if (is_kw(i, "fork") || is_kw(i, "begin")) ++depth;
                else if ((is_kw(i, "join") || is_kw(i, "end")) && --depth == 0) return i + 1;
            }
            return toks_.size();
        }
        if (is_kw(i, "case") || is_kw(i, "casex") || is_kw(i, "casez")) {
            int depth = 0;
            for (; i < toks_.size(); ++i) {
                if (is_kw(i, "case") || is_kw(i, "casex") || is_kw(i, "casez")) ++depth;
                else if (is_kw(i, "endcase") && --depth == 0) return i + 1;
            }
            return toks_.size();
        }
        if (is_kw(i, "if")) {
            ++i;
            if (is_op(i, "(")) i = skip_parens(i);
            i = scan_statement(i);
            if (is_kw(i, "else")) i = scan_statement(i + 1);
            return i;
        }
        if (is_kw(i, "for") || is_kw(i, "while") || is_kw(i, "repeat")) {
            ++i;
            if (is_op(i, "(")) i = skip_parens(i);
            return scan_statement(i);
        }
        if (is_kw(i, "forever")) return scan_statement(i + 1);
        while (i < toks_.size() && !is_op(i, ";")) ++i;
        return i < toks_.size() ? i + 1 : i;
    }

    // Consume optional '#' delay / '@' sensitivity prefixes of a process body.
    std::size_t skip_timing_controls(std::size_t i) {
        for (;;) {
            if (is_op(i, "#")) {
                ++i;
                if (is_op(i, "(")) i = skip_parens(i);
                else if (i < toks_.size() && toks_[i].cls == TokenClass::Number) ++i;
                continue;
            }
            if (is_op(i, "@")) {
                ++i;
                if (is_op(i, "(")) i = skip_parens(i);
                else if (i < toks_.size()) ++i; // @* or @ident
                continue;
            }
            return i;
        }
    }

    bool sensitivity_has_edge(std::size_t always_idx, std::size_t body_idx) const {
        for (std::size_t i = always_idx; i < body_idx; ++i) {
            if (is_kw(i, "posedge") || is_kw(i, "negedge")) return true;
        }
        return false;
    }

    std::size_t scan_module(std::size_t module_idx) {
        ModuleInfo info;
        std::size_t i = module_idx + 1;
        if (is_ident(i)) {
            info.name = toks_[i].text;
            info.name_line = toks_[i].line;
            ++i;
        }
        if (is_op(i, "#") && is_op(i + 1, "(")) i = skip_parens(i + 1);
        if (is_op(i, "(")) {
            std::size_t close = skip_parens(i) - 1; // index of ')'
            for (std::size_t p = i + 1; p < close; ++p) {
                if (!is_ident(p)) continue;
                // A port name is an identifier directly followed by ',' or the
                // closing paren or a default-value '='.
                if (is_op(p + 1, ",") || p + 1 == close || is_op(p + 1, "=")) {
                    info.ports.emplace_back(toks_[p].text, toks_[p].line);
                }
            }
            i = close + 1;
        }
        while (i < toks_.size() && !is_op(i, ";")) ++i;
        if (i < toks_.size()) ++i;
        info.body_begin = i;

        while (i < toks_.size() && !is_kw(i, "endmodule")) {
            if (is_kw(i, "initial")) {
                std::size_t start = skip_timing_controls(i + 1);
                std::size_t end = scan_statement(start);
                initial_ranges.push_back({i, end});
                i = end;
                continue;
            }
            if (is_kw(i, "always") || is_kw(i, "always_ff")) {
                std::size_t body = skip_timing_controls(i + 1);
                std::size_t end = scan_statement(body);
                if (is_kw(i, "always_ff") || sensitivity_has_edge(i + 1, body)) {
                    clocked_always_ranges.push_back({body, end});
                }
                i = end;
                continue;
            }
            if (is_kw(i, "for") || is_kw(i, "while") || is_kw(i, "repeat")) {
                i = scan_statement(i);
                continue;
            }
            ++i;
        }
        info.body_end = i;
        modules.push_back(std::move(info));
        return i;
    }
};

} // namespace detail

// Deterministic expert-rule style gate over one sample's solution text.
inline StyleVerdict style_lint(const Sample& sample, const LintRuleSet& rules = LintRuleSet::defaults()) {
    if (sample.solution.empty())
        throw std::invalid_argument("style_lint: sample '" + sample.id + "' has an empty solution");

    std::vector<Token> significant;
    for (auto& t : lex_verilog(sample.solution)) {
        if (t.cls != TokenClass::Comment) significant.push_back(std::move(t));
    }

    detail::LintWalker walker(significant);
    walker.walk();

    std::vector<LintViolation> violations;

    if (rules.r1) {
        for (const auto& m : walker.modules) {
            if (!m.name.empty() && !detail::is_lower_snake_case(m.name)) {
                violations.push_back({"R1", m.name_line,
                                      "module name '" + m.name + "' is not lower_snake_case"});
            }
        }
    }

    if (rules.r2) {
        for (std::size_t i = 0; i + 1 < significant.size(); ++i) {
            if (significant[i].cls != TokenClass::Operator || significant[i].text != "#") continue;
            if (significant[i + 1].cls != TokenClass::Number) continue;
            bool in_initial = false;
            for (const auto& r : walker.initial_ranges) in_initial |= r.contains(i);
            if (!in_initial) {
                violations.push_back({"R2", significant[i].line,
                                      "#" + significant[i + 1].text + " delay outside an initial block"});
            }
        }
    }

    if (rules.r3) {
        for (std::size_t i = 0; i < significant.size(); ++i) {
            if (significant[i].cls != TokenClass::Operator || significant[i].text != "=") continue;
            bool in_clocked = false;
            for (const auto& r : walker.clocked_always_ranges) in_clocked |= r.contains(i);
            if (!in_clocked) continue;
            bool in_for_header = false;
            for (const auto& r : walker.for_header_ranges) in_for_header |= r.contains(i);
            if (!in_for_header) {
                violations.push_back({"R3", significant[i].line,
                                      "blocking assignment in a clocked always block"});
            }
        }
    }

    if (rules.r4) {
        for (const auto& m : walker.modules) {
            if (m.ports.empty()) continue;
            std::unordered_map<std::string, int> uses;
            for (const auto& [name, line] : m.ports) uses[name] = 0;

            bool decl_stmt = false;
            bool past_eq = false;
            for (std::size_t i = m.body_begin; i < m.body_end; ++i) {
                const Token& t = significant[i];
                bool stmt_boundary =
                    (t.cls == TokenClass::Operator && t.text == ";") ||
                    (t.cls == TokenClass::Keyword &&
                     (t.text == "begin" || t.text == "end" || t.text == "endcase" ||
                      t.text == "else" || t.text == "endgenerate"));
                if (stmt_boundary) {
                    decl_stmt = false;
                    past_eq = false;
                    continue;
                }
                if (t.cls == TokenClass::Keyword && detail::is_decl_keyword(t.text) && !decl_stmt) {
                    decl_stmt = true;
                    past_eq = false;
                    continue;
                }
                if (t.cls == TokenClass::Operator && t.text == "=") {
                    past_eq = true;
                    continue;
                }
                if (t.cls == TokenClass::Identifier) {
                    auto it = uses.find(t.text);
                    if (it != uses.end() && (!decl_stmt || past_eq)) ++it->second;
                }
            }
            for (const auto& [name, line] : m.ports) {
                if (uses[name] == 0) {
                    violations.push_back({"R4", line,
                                          "port '" + name + "' is declared but never referenced"});
                }
            }
        }
    }

    return StyleVerdict::from_violations(std::move(violations));
}

} // namespace veriforge
