#pragma once

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace veriforge {

enum class TokenClass { Keyword, Identifier, Number, String, Operator, Comment };

inline char token_class_symbol(TokenClass c) {
    switch (c) {
        case TokenClass::Keyword: return 'K';
        case TokenClass::Identifier: return 'I';
        case TokenClass::Number: return 'N';
        case TokenClass::String: return 'S';
        case TokenClass::Operator: return 'O';
        case TokenClass::Comment: return 'C';
    }
    return 'O';
}

struct Token {
    TokenClass cls;
    std::string text;
    int line = 1;
};

namespace detail {

inline const std::unordered_set<std::string>& verilog_keywords() {
    static const std::unordered_set<std::string> kw = {
        "always",    "always_comb", "always_ff",  "always_latch", "and",
        "assign",    "automatic",   "begin",      "buf",          "case",
        "casex",     "casez",       "default",    "defparam",     "disable",
        "edge",      "else",        "end",        "endcase",      "endfunction",
        "endgenerate", "endmodule", "endprimitive", "endspecify", "endtask",
        "event",     "for",         "force",      "forever",      "fork",
        "function",  "generate",    "genvar",     "if",           "initial",
        "inout",     "input",       "integer",    "join",         "localparam",
        "logic",     "module",      "nand",       "negedge",      "nor",
        "not",       "or",          "output",     "parameter",    "posedge",
        "primitive", "real",        "realtime",   "reg",          "release",
        "repeat",    "scalared",    "signed",     "specify",      "supply0",
        "supply1",   "task",        "time",       "tri",          "tri0",
        "tri1",      "trireg",      "unsigned",   "vectored",     "wait",
        "wand",      "while",       "wire",       "wor",          "xnor",
        "xor",
    };
    return kw;
}

inline bool is_ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
inline bool is_ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '$'; }
inline bool is_base_digit(unsigned char c) {
    return std::isxdigit(c) || c == '_' || c == 'x' || c == 'X' || c == 'z' || c == 'Z' || c == '?';
}

} // namespace detail

// Total Verilog lexer: any byte sequence produces a token stream. Whitespace
// collapses; bytes that fit no rule come out as single-character operators.
inline std::vector<Token> lex_verilog(std::string_view src) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    int line = 1;
    const std::size_t n = src.size();

    auto push = [&](TokenClass cls, std::size_t begin, std::size_t end, int at_line) {
        tokens.push_back({cls, std::string(src.substr(begin, end - begin)), at_line});
    };

    while (i < n) {
        unsigned char c = static_cast<unsigned char>(src[i]);
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        std::size_t start = i;
        int start_line = line;

        // Comments.
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            while (i < n && src[i] != '\n') ++i;
            push(TokenClass::Comment, start, i, start_line);
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            i += 2;
            while (i < n && !(src[i] == '*' && i + 1 < n && src[i + 1] == '/')) {
                if (src[i] == '\n') ++line;
                ++i;
            }
            if (i < n) i += 2; // consume '*/', tolerate unterminated at EOF
            push(TokenClass::Comment, start, i, start_line);
            continue;
        }

        // Strings: single line; an unterminated string ends at EOL.
        if (c == '"') {
            ++i;
            while (i < n && src[i] != '"' && src[i] != '\n') {
                if (src[i] == '\\' && i + 1 < n && src[i + 1] != '\n') ++i;
                ++i;
            }
            if (i < n && src[i] == '"') ++i;
            push(TokenClass::String, start, i, start_line);
            continue;
        }

        // Identifiers and keywords.
        if (detail::is_ident_start(c)) {
            while (i < n && detail::is_ident_char(static_cast<unsigned char>(src[i]))) ++i;
            std::string word(src.substr(start, i - start));
            push(detail::verilog_keywords().count(word) ? TokenClass::Keyword : TokenClass::Identifier,
                 start, i, start_line);
            continue;
        }

        // System tasks/functions ($display) and compiler directives (`define).
        if (c == '$' || c == '`') {
            ++i;
            std::size_t body = i;
            while (i < n && detail::is_ident_char(static_cast<unsigned char>(src[i]))) ++i;
            push(i > body ? TokenClass::Identifier : TokenClass::Operator, start, i, start_line);
            continue;
        }

        // Escaped identifiers: backslash up to the next whitespace.
        if (c == '\\' && i + 1 < n && !std::isspace(static_cast<unsigned char>(src[i + 1]))) {
            ++i;
            while (i < n && !std::isspace(static_cast<unsigned char>(src[i]))) ++i;
            push(TokenClass::Identifier, start, i, start_line);
            continue;
        }

        // Numbers: plain decimal/real, sized (4'b1010) or unsized ('hFF) base literals.
        auto scan_base_literal = [&]() -> bool {
            // at src[i] == '\'' ; expects [sS]?[bodhBODH] then base digits
            std::size_t j = i + 1;
            if (j < n && (src[j] == 's' || src[j] == 'S')) ++j;
            if (j >= n) return false;
            char b = static_cast<char>(std::tolower(static_cast<unsigned char>(src[j])));
            if (b != 'b' && b != 'o' && b != 'd' && b != 'h') return false;
            ++j;
            std::size_t digits = j;
            while (j < n && detail::is_base_digit(static_cast<unsigned char>(src[j]))) ++j;
            if (j == digits) return false;
            i = j;
            return true;
        };
        if (std::isdigit(c)) {
            while (i < n && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
            if (i < n && src[i] == '\'') {
                if (!scan_base_literal()) { /* size without base: leave '\'' for next token */ }
            } else {
                if (i < n && src[i] == '.' && i + 1 < n &&
                    std::isdigit(static_cast<unsigned char>(src[i + 1]))) {
                    ++i;
                    while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
                }
                if (i < n && (src[i] == 'e' || src[i] == 'E')) {
                    std::size_t j = i + 1;
                    if (j < n && (src[j] == '+' || src[j] == '-')) ++j;
                    if (j < n && std::isdigit(static_cast<unsigned char>(src[j]))) {
                        i = j;
                        while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
                    }
                }
            }
            push(TokenClass::Number, start, i, start_line);
            continue;
        }
        if (c == '\'' && scan_base_literal()) {
            push(TokenClass::Number, start, i, start_line);
            continue;
        }

        // Operators, multi-character first.
        static const std::array<std::string_view, 22> multi = {
            "===", "!==", "<<<", ">>>", "<=", ">=", "==", "!=", "&&", "||",
            "<<",  ">>",  "->",  "**",  "+:", "-:", "::", "~&", "~|", "~^",
            "^~",  "##",
        };
        std::size_t matched = 1;
        for (const auto& op : multi) {
            if (src.substr(i, op.size()) == op) {
                matched = op.size();
                break;
            }
        }
        i += matched;
        push(TokenClass::Operator, start, i, start_line);
    }
    return tokens;
}

// Collapses source text to its token-class sequence.
inline std::vector<TokenClass> tokenize_to_classes(std::string_view src) {
    std::vector<TokenClass> classes;
    auto tokens = lex_verilog(src);
    classes.reserve(tokens.size());
    for (const auto& t : tokens) classes.push_back(t.cls);
    return classes;
}

// One byte per token; the text whose compression ratio defines CR-POS.
inline std::string token_class_string(const std::vector<TokenClass>& classes) {
    std::string s;
    s.reserve(classes.size());
    for (TokenClass c : classes) s.push_back(token_class_symbol(c));
    return s;
}

} // namespace veriforge
