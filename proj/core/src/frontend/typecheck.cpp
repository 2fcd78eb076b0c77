#include <map>
#include <set>
#include <vector>

#include "tgen/frontend/ast.hpp"
#include "tgen/frontend/diag.hpp"
#include "tgen/frontend/parser.hpp"

namespace tgen::frontend {

namespace {

constexpr size_t kMaxDiagnostics = 32;

class TypeChecker {
public:
    TypeChecker(Ast& ast, const FrontendOptions& opts) : ast_(ast), opts_(opts) {}

    Diagnostics run() {
        for (size_t i = 0; i < ast_.functions.size(); i++) check_function(ast_.functions[i]);
        check_entry();
        check_recursion();
        return std::move(diags_);
    }

private:
    Ast& ast_;
    const FrontendOptions& opts_;
    Diagnostics diags_;
    FunctionDef* fn_ = nullptr;
    std::vector<std::map<std::string, int>> scopes_;

    void error(Diagnostic::Code code, SrcLoc loc, std::string msg) {
        if (diags_.size() < kMaxDiagnostics)
            diags_.push_back({Diagnostic::Severity::Error, code, loc, std::move(msg)});
    }

    void check_entry() {
        const FunctionDef* entry = ast_.find(ast_.entry);
        if (!entry) {
            error(Diagnostic::Code::TypeError, {1, 1},
                  "entry function '" + ast_.entry + "' not found");
            return;
        }
        if (!entry->params.empty())
            error(Diagnostic::Code::UnsupportedFeature, entry->loc,
                  "entry function parameters are not supported");
    }

    void check_recursion() {
        // DFS over the call graph; MiniC has no recursion.
        size_t n = ast_.functions.size();
        std::vector<std::set<int>> calls(n);
        for (size_t i = 0; i < n; i++) collect_calls(ast_.functions[i].body, calls[i]);
        std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
        for (size_t i = 0; i < n; i++) {
            if (state[i] == 0 && dfs_cycle(static_cast<int>(i), calls, state)) {
                error(Diagnostic::Code::UnsupportedFeature, ast_.functions[i].loc,
                      "recursion is not supported (cycle through '" +
                          ast_.functions[i].name + "')");
                return;
            }
        }
    }

    bool dfs_cycle(int i, const std::vector<std::set<int>>& calls, std::vector<int>& state) {
        state[i] = 1;
        for (int j : calls[i]) {
            if (state[j] == 1) return true;
            if (state[j] == 0 && dfs_cycle(j, calls, state)) return true;
        }
        state[i] = 2;
        return false;
    }

    void collect_calls(const std::vector<StmtPtr>& body, std::set<int>& out) {
        for (const auto& s : body) collect_calls_stmt(s.get(), out);
    }
    void collect_calls_stmt(const Stmt* s, std::set<int>& out) {
        if (!s) return;
        for (const Expr* e : {s->index.get(), s->value.get(), s->cond.get()})
            collect_calls_expr(e, out);
        collect_calls_stmt(s->for_init.get(), out);
        collect_calls_stmt(s->for_step.get(), out);
        collect_calls(s->body, out);
        collect_calls(s->else_body, out);
        for (const auto& c : s->cases) collect_calls(c.body, out);
    }
    void collect_calls_expr(const Expr* e, std::set<int>& out) {
        if (!e) return;
        if (e->kind == Expr::Kind::Call && e->callee >= 0) out.insert(e->callee);
        collect_calls_expr(e->a.get(), out);
        collect_calls_expr(e->b.get(), out);
        collect_calls_expr(e->c.get(), out);
        for (const auto& arg : e->args) collect_calls_expr(arg.get(), out);
    }

    void check_function(FunctionDef& fn) {
        fn_ = &fn;
        fn.locals.clear();
        scopes_.clear();
        scopes_.emplace_back();
        for (const auto& p : fn.params) {
            if (scopes_.back().count(p.name))
                error(Diagnostic::Code::TypeError, p.loc,
                      "duplicate parameter '" + p.name + "'");
            int slot = static_cast<int>(fn.locals.size());
            fn.locals.push_back({p.name, p.type, std::nullopt});
            scopes_.back()[p.name] = slot;
        }
        check_block(fn.body, /*new_scope=*/true);
        scopes_.pop_back();
    }

    void check_block(std::vector<StmtPtr>& body, bool new_scope) {
        if (new_scope) scopes_.emplace_back();
        for (auto& s : body) check_stmt(*s);
        if (new_scope) scopes_.pop_back();
    }

    int declare(const std::string& name, TypeDesc t, std::optional<uint32_t> arr, SrcLoc loc) {
        if (scopes_.back().count(name))
            error(Diagnostic::Code::TypeError, loc, "redeclaration of '" + name + "'");
        int slot = static_cast<int>(fn_->locals.size());
        fn_->locals.push_back({name, t, arr});
        scopes_.back()[name] = slot;
        return slot;
    }

    int lookup(const std::string& name, SrcLoc loc) {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto f = it->find(name);
            if (f != it->end()) return f->second;
        }
        error(Diagnostic::Code::TypeError, loc, "use of undeclared variable '" + name + "'");
        return -1;
    }

    bool is_array(int slot) const {
        return slot >= 0 && fn_->locals[slot].array_size.has_value();
    }
    TypeDesc slot_type(int slot) const {
        return slot >= 0 ? fn_->locals[slot].type : TypeDesc::int32();
    }

    // Inserts a conversion of `e` to type `to` unless it already has it.
    void coerce(ExprPtr& e, TypeDesc to) {
        if (!e) return;
        if (e->type == to) return;
        auto cast = std::make_unique<Expr>();
        cast->kind = to.is_bool() ? Expr::Kind::BoolCast : Expr::Kind::Cast;
        cast->type = to;
        cast->loc = e->loc;
        cast->implicit_cast = true;
        cast->a = std::move(e);
        e = std::move(cast);
    }

    void check_stmt(Stmt& s) {
        switch (s.kind) {
            case Stmt::Kind::Block:
                check_block(s.body, true);
                break;
            case Stmt::Kind::Decl: {
                if (s.value) {
                    check_value(s.value);
                    coerce(s.value, s.decl_type);
                }
                s.slot = declare(s.name, s.decl_type, s.array_size, s.loc);
                break;
            }
            case Stmt::Kind::Assign: {
                s.slot = lookup(s.name, s.loc);
                check_value(s.value);
                if (s.index) {
                    check_value(s.index);
                    if (!is_array(s.slot))
                        error(Diagnostic::Code::TypeError, s.loc,
                              "'" + s.name + "' is not an array");
                } else if (is_array(s.slot)) {
                    error(Diagnostic::Code::TypeError, s.loc,
                          "cannot assign to array '" + s.name + "'");
                }
                coerce(s.value, slot_type(s.slot));
                break;
            }
            case Stmt::Kind::If:
            case Stmt::Kind::While:
                check_value(s.cond);
                check_block(s.body, true);
                check_block(s.else_body, true);
                break;
            case Stmt::Kind::For: {
                scopes_.emplace_back();
                if (s.for_init) check_stmt(*s.for_init);
                if (s.cond) check_value(s.cond);
                check_block(s.body, true);
                if (s.for_step) check_stmt(*s.for_step);
                scopes_.pop_back();
                break;
            }
            case Stmt::Kind::Switch: {
                check_value(s.cond);
                TypeDesc ct = promote(s.cond->type);
                coerce(s.cond, ct);
                std::set<uint64_t> seen;
                for (auto& c : s.cases) {
                    if (c.match) {
                        uint64_t m = mask_width(*c.match, ct.width);
                        if (!seen.insert(m).second)
                            error(Diagnostic::Code::TypeError, c.loc, "duplicate case value");
                        c.match = m;
                    }
                    check_block(c.body, true);
                }
                break;
            }
            case Stmt::Kind::Return: {
                if (fn_->return_type) {
                    if (!s.value) {
                        error(Diagnostic::Code::TypeError, s.loc,
                              "non-void function must return a value");
                    } else {
                        check_value(s.value);
                        coerce(s.value, *fn_->return_type);
                    }
                } else if (s.value) {
                    error(Diagnostic::Code::TypeError, s.loc,
                          "void function cannot return a value");
                }
                break;
            }
            case Stmt::Kind::ExprStmt: {
                std::optional<TypeDesc> t = check_expr(s.value);
                (void)t;  // value discarded; void calls allowed here
                break;
            }
            case Stmt::Kind::Assume:
                check_value(s.cond);
                break;
            case Stmt::Kind::Exit:
                check_value(s.value);
                coerce(s.value, TypeDesc::int32());
                break;
            case Stmt::Kind::Error:
            case Stmt::Kind::Abort:
                break;
        }
    }

    // Type an expression that must produce a scalar value.
    void check_value(ExprPtr& e) {
        std::optional<TypeDesc> t = check_expr(e);
        if (!t) {
            error(Diagnostic::Code::TypeError, e->loc, "void value used in expression");
            e->type = TypeDesc::int32();
        }
    }

    // Returns the expression type; nullopt for void calls.
    std::optional<TypeDesc> check_expr(ExprPtr& e) {
        switch (e->kind) {
            case Expr::Kind::IntLit:
                return e->type;
            case Expr::Kind::Var: {
                e->slot = lookup(e->name, e->loc);
                if (is_array(e->slot)) {
                    error(Diagnostic::Code::TypeError, e->loc,
                          "array '" + e->name + "' used as a scalar value");
                }
                e->type = slot_type(e->slot);
                return e->type;
            }
            case Expr::Kind::Index: {
                // base is a Var naming an array
                e->a->slot = lookup(e->a->name, e->a->loc);
                if (!is_array(e->a->slot))
                    error(Diagnostic::Code::TypeError, e->loc,
                          "'" + e->a->name + "' is not an array");
                e->a->type = slot_type(e->a->slot);
                check_value(e->b);
                e->type = slot_type(e->a->slot);
                return e->type;
            }
            case Expr::Kind::Unary: {
                check_value(e->a);
                if (e->uop == UnOp::LogNot) {
                    e->type = TypeDesc::int32();
                } else {
                    TypeDesc t = promote(e->a->type);
                    coerce(e->a, t);
                    e->type = t;
                }
                return e->type;
            }
            case Expr::Kind::Binary: {
                check_value(e->a);
                check_value(e->b);
                if (e->bop == BinOp::LogAnd || e->bop == BinOp::LogOr) {
                    e->type = TypeDesc::int32();
                } else if (e->bop == BinOp::Shl || e->bop == BinOp::Shr) {
                    coerce(e->a, promote(e->a->type));
                    coerce(e->b, promote(e->b->type));
                    e->type = e->a->type;
                } else {
                    TypeDesc ct = common_type(e->a->type, e->b->type);
                    coerce(e->a, ct);
                    coerce(e->b, ct);
                    e->type = is_comparison(e->bop) ? TypeDesc::int32() : ct;
                }
                return e->type;
            }
            case Expr::Kind::Cast:
            case Expr::Kind::BoolCast: {
                check_value(e->a);
                if (e->kind == Expr::Kind::Cast && e->type.is_bool()) e->kind = Expr::Kind::BoolCast;
                return e->type;
            }
            case Expr::Kind::Ternary: {
                check_value(e->a);
                check_value(e->b);
                check_value(e->c);
                TypeDesc ct = common_type(e->b->type, e->c->type);
                coerce(e->b, ct);
                coerce(e->c, ct);
                e->type = ct;
                return e->type;
            }
            case Expr::Kind::Nondet:
                return e->type;
            case Expr::Kind::Call: {
                e->callee = ast_.find_index(e->name);
                if (e->callee < 0) {
                    error(Diagnostic::Code::TypeError, e->loc,
                          "call to undefined function '" + e->name + "'");
                    e->type = TypeDesc::int32();
                    for (auto& a : e->args) check_value(a);
                    return e->type;
                }
                FunctionDef& callee = ast_.functions[e->callee];
                if (e->args.size() != callee.params.size())
                    error(Diagnostic::Code::TypeError, e->loc,
                          "wrong number of arguments to '" + e->name + "'");
                for (size_t i = 0; i < e->args.size(); i++) {
                    check_value(e->args[i]);
                    if (i < callee.params.size()) coerce(e->args[i], callee.params[i].type);
                }
                if (!callee.return_type) return std::nullopt;
                e->type = *callee.return_type;
                return e->type;
            }
        }
        return e->type;
    }
};

}  // namespace

Diagnostics typecheck(Ast& ast, const FrontendOptions& opts) {
    TypeChecker tc(ast, opts);
    return tc.run();
}

}  // namespace tgen::frontend
