#include "tgen/frontend/lexer.hpp"

#include <cctype>
#include <unordered_set>

namespace tgen::frontend {

namespace {

const std::unordered_set<std::string>& keywords() {
    static const std::unordered_set<std::string> kw = {
        "int",    "char",   "short",  "long",   "unsigned", "signed", "_Bool",
        "bool",   "void",   "if",     "else",   "while",    "for",    "switch",
        "case",   "default","return", "break",  "continue", "goto",   "do",
        "float",  "double", "struct", "union",  "enum",     "sizeof", "typedef",
        "static", "extern", "const",  "volatile",
    };
    return kw;
}

struct Cursor {
    std::string_view src;
    size_t pos = 0;
    uint32_t line = 1, col = 1;

    bool eof() const { return pos >= src.size(); }
    char peek(size_t off = 0) const {
        return pos + off < src.size() ? src[pos + off] : '\0';
    }
    char get() {
        char c = src[pos++];
        if (c == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
        return c;
    }
    SrcLoc loc() const { return {line, col}; }
};

}  // namespace

std::vector<Token> lex(std::string_view source) {
    std::vector<Token> out;
    Cursor c{source};

    auto skip_ws_and_comments = [&] {
        for (;;) {
            while (!c.eof() && std::isspace(static_cast<unsigned char>(c.peek()))) c.get();
            if (c.peek() == '/' && c.peek(1) == '/') {
                while (!c.eof() && c.peek() != '\n') c.get();
                continue;
            }
            if (c.peek() == '/' && c.peek(1) == '*') {
                SrcLoc start = c.loc();
                c.get();
                c.get();
                while (!(c.peek() == '*' && c.peek(1) == '/')) {
                    if (c.eof()) throw LexError{start, "unterminated block comment"};
                    c.get();
                }
                c.get();
                c.get();
                continue;
            }
            // preprocessor residue (line markers, pragmas) in .i files
            if (c.peek() == '#' && (c.col == 1 || out.empty())) {
                while (!c.eof() && c.peek() != '\n') c.get();
                continue;
            }
            break;
        }
    };

    while (true) {
        skip_ws_and_comments();
        if (c.eof()) break;
        Token t;
        t.loc = c.loc();
        char ch = c.peek();

        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string s;
            while (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_')
                s.push_back(c.get());
            t.kind = keywords().count(s) ? Token::Kind::Keyword : Token::Kind::Ident;
            t.text = std::move(s);
            out.push_back(std::move(t));
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(ch))) {
            t.kind = Token::Kind::IntLit;
            uint64_t v = 0;
            if (ch == '0' && (c.peek(1) == 'x' || c.peek(1) == 'X')) {
                c.get();
                c.get();
                t.hex = true;
                if (!std::isxdigit(static_cast<unsigned char>(c.peek())))
                    throw LexError{t.loc, "malformed hexadecimal literal"};
                while (std::isxdigit(static_cast<unsigned char>(c.peek()))) {
                    char d = c.get();
                    uint64_t dv = d <= '9' ? uint64_t(d - '0')
                                           : uint64_t(std::tolower(d) - 'a' + 10);
                    v = v * 16 + dv;
                }
            } else {
                while (std::isdigit(static_cast<unsigned char>(c.peek())))
                    v = v * 10 + uint64_t(c.get() - '0');
            }
            // integer suffixes: u, l, ul, ll, ull in any case
            bool uns = false;
            int ls = 0;
            while (c.peek() == 'u' || c.peek() == 'U' || c.peek() == 'l' || c.peek() == 'L') {
                char s = c.get();
                if (s == 'u' || s == 'U') uns = true;
                else ls++;
            }
            t.value = v;
            if (uns) t.suffix = ls >= 2 ? 'U' : 'u';
            else if (ls == 1) t.suffix = 'l';
            else if (ls >= 2) t.suffix = 'L';
            out.push_back(std::move(t));
            continue;
        }

        if (ch == '\'') {
            SrcLoc start = c.loc();
            c.get();
            char v = c.get();
            if (v == '\\') {
                char e = c.get();
                switch (e) {
                    case 'n': v = '\n'; break;
                    case 't': v = '\t'; break;
                    case 'r': v = '\r'; break;
                    case '0': v = '\0'; break;
                    case '\\': v = '\\'; break;
                    case '\'': v = '\''; break;
                    default: throw LexError{start, "unsupported escape in char literal"};
                }
            }
            if (c.peek() != '\'') throw LexError{start, "unterminated char literal"};
            c.get();
            t.kind = Token::Kind::IntLit;
            t.value = static_cast<uint64_t>(static_cast<unsigned char>(v));
            out.push_back(std::move(t));
            continue;
        }

        // punctuation, longest match first
        static const char* puncts3[] = {"<<=", ">>="};
        static const char* puncts2[] = {"<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
                                        "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
                                        "++", "--", "->"};
        std::string p;
        for (const char* s : puncts3) {
            if (source.substr(c.pos, 3) == s) { p = s; break; }
        }
        if (p.empty())
            for (const char* s : puncts2) {
                if (source.substr(c.pos, 2) == s) { p = s; break; }
            }
        if (p.empty()) {
            static const std::string singles = "+-*/%<>=!&|^~?:;,(){}[]";
            if (singles.find(ch) == std::string::npos)
                throw LexError{t.loc, std::string("unexpected character '") + ch + "'"};
            p = std::string(1, ch);
        }
        for (size_t i = 0; i < p.size(); i++) c.get();
        t.kind = Token::Kind::Punct;
        t.text = std::move(p);
        out.push_back(std::move(t));
    }

    Token end;
    end.kind = Token::Kind::End;
    end.loc = c.loc();
    out.push_back(std::move(end));
    return out;
}

}  // namespace tgen::frontend
