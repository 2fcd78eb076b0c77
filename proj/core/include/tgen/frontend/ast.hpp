#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tgen/types.hpp"

namespace tgen::frontend {

struct Expr;
struct Stmt;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;

// Typed expression node. After type checking every node carries a TypeDesc
// and variable references are resolved to function-local slots. Implicit
// conversions are materialized as Cast nodes so the interpreter and the SSA
// encoder never have to re-derive C conversion rules.
struct Expr {
    enum class Kind : uint8_t {
        IntLit,   // value
        Var,      // name, slot
        Index,    // base(Var) [ a ]   -- fixed-size array element read
        Unary,    // uop a
        Binary,   // bop a b
        Cast,     // (type) a          -- numeric modular conversion
        BoolCast, // a != 0            -- conversion to _Bool
        Ternary,  // a ? b : c         -- removed by lowering
        Nondet,   // __VERIFIER_nondet_<T>()
        Call,     // user function call with a value result
    };

    Kind kind;
    TypeDesc type;
    SrcLoc loc;
    uint64_t value = 0;        // IntLit: raw, masked to type width
    UnOp uop = UnOp::Plus;
    BinOp bop = BinOp::Add;
    std::string name;          // Var: variable; Call: callee
    int slot = -1;             // Var: resolved local slot
    int callee = -1;           // Call: resolved function index
    bool implicit_cast = false;
    ExprPtr a, b, c;
    std::vector<ExprPtr> args;

    ExprPtr clone() const;
};

struct SwitchCase {
    std::optional<uint64_t> match;  // nullopt = default case
    std::vector<StmtPtr> body;
    SrcLoc loc;
    int goal = -1;  // switch-case / switch-default goal
};

// Statement node. Intrinsic calls that affect control (reach_error, assume,
// exit, abort) get their own kinds; plain calls in statement position are
// ExprStmt. Goal ids are -1 until goal injection runs on a clone of the AST.
struct Stmt {
    enum class Kind : uint8_t {
        Block,
        Decl,
        Assign,
        If,
        While,
        For,       // removed by lowering
        Switch,
        Return,
        ExprStmt,
        Assume,    // __VERIFIER_assume(e)
        Error,     // reach_error()
        Exit,      // exit(e)
        Abort,     // abort()
    };

    Kind kind;
    SrcLoc loc;
    bool synthetic = false;  // introduced by lowering

    // Block
    std::vector<StmtPtr> body;
    // Decl
    TypeDesc decl_type;
    std::string name;
    int slot = -1;
    std::optional<uint32_t> array_size;
    // Assign: name/slot = value, or name[index] = value
    ExprPtr index;
    ExprPtr value;
    // If: cond, then body, else else_body; While: cond, body
    ExprPtr cond;
    std::vector<StmtPtr> else_body;
    // For: init/step in a, b slots of the statement
    StmtPtr for_init;
    StmtPtr for_step;
    // Switch
    std::vector<SwitchCase> cases;
    // Return / Exit / ExprStmt / Assume: value or cond as appropriate
    // goals (set by instrumentation)
    int then_goal = -1, else_goal = -1;      // If
    int enter_goal = -1, exit_goal = -1;     // While
    int default_goal = -1;                   // Switch without explicit default
    int error_goal = -1;                     // Error

    StmtPtr clone() const;
};

struct Param {
    TypeDesc type;
    std::string name;
    SrcLoc loc;
};

struct FunctionDef {
    std::string name;
    std::optional<TypeDesc> return_type;  // nullopt = void
    std::vector<Param> params;
    std::vector<StmtPtr> body;
    SrcLoc loc;

    // Filled by the type checker: one entry per declared local (params first).
    struct Local {
        std::string name;
        TypeDesc type;
        std::optional<uint32_t> array_size;
    };
    std::vector<Local> locals;

    FunctionDef clone() const;
};

struct Ast {
    std::vector<FunctionDef> functions;
    std::string entry = "main";
    std::string filename;
    int arch = 32;

    const FunctionDef* find(const std::string& name) const {
        for (const auto& f : functions)
            if (f.name == name) return &f;
        return nullptr;
    }
    int find_index(const std::string& name) const {
        for (size_t i = 0; i < functions.size(); i++)
            if (functions[i].name == name) return static_cast<int>(i);
        return -1;
    }

    Ast clone() const;
};

}  // namespace tgen::frontend
