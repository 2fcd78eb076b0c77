#pragma once

#include <optional>
#include <string_view>

#include "tgen/frontend/ast.hpp"
#include "tgen/frontend/diag.hpp"

namespace tgen::frontend {

struct FrontendOptions {
    int arch = 32;  // 32 or 64; decides the width of `long`
    std::string entry = "main";
    std::string error_function = "reach_error";
};

struct ParseResult {
    std::optional<Ast> ast;
    Diagnostics diagnostics;
    bool ok() const { return ast.has_value() && !has_errors(diagnostics); }
};

// Parse and type-check MiniC source without lowering; variable slots are
// resolved and implicit conversions materialized. Used directly by tests
// that compare pre- and post-lowering behavior.
ParseResult parse_unlowered(std::string_view source, const FrontendOptions& opts = {});

// Full frontend: parse, type-check, and lower. On success the Ast contains
// no &&/||/?:, no `for`, and every expression carries a type.
ParseResult parse_program(std::string_view source, const FrontendOptions& opts = {});

// Rewrites short-circuit operators, ternaries, and `for` loops into explicit
// `if`/`while` form with fresh temporaries; evaluation order is preserved.
Ast lower_decisions(const Ast& ast);

}  // namespace tgen::frontend
