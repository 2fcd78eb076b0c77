#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tgen/types.hpp"

namespace tgen::frontend {

struct Token {
    enum class Kind : uint8_t {
        End,
        Ident,
        IntLit,
        Punct,    // operators and delimiters, spelled in `text`
        Keyword,
    };
    Kind kind = Kind::End;
    std::string text;
    uint64_t value = 0;       // IntLit: numeric value (wraps mod 2^64)
    char suffix = 0;          // 0, 'u', 'l', 'L' (ll), 'U' (ull/ul)
    bool hex = false;
    SrcLoc loc;

    bool is(Kind k) const { return kind == k; }
    bool punct(std::string_view p) const { return kind == Kind::Punct && text == p; }
    bool keyword(std::string_view k) const { return kind == Kind::Keyword && text == k; }
};

// Tokenizes MiniC source. Preprocessor line markers (# ...) are skipped so
// pre-expanded .i files lex cleanly. Throws LexError on malformed input.
struct LexError {
    SrcLoc loc;
    std::string message;
};

std::vector<Token> lex(std::string_view source);

}  // namespace tgen::frontend
