#include "tgen/frontend/ast.hpp"

namespace tgen::frontend {

ExprPtr Expr::clone() const {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->type = type;
    e->loc = loc;
    e->value = value;
    e->uop = uop;
    e->bop = bop;
    e->name = name;
    e->slot = slot;
    e->callee = callee;
    e->implicit_cast = implicit_cast;
    if (a) e->a = a->clone();
    if (b) e->b = b->clone();
    if (c) e->c = c->clone();
    e->args.reserve(args.size());
    for (const auto& arg : args) e->args.push_back(arg->clone());
    return e;
}

StmtPtr Stmt::clone() const {
    auto s = std::make_unique<Stmt>();
    s->kind = kind;
    s->loc = loc;
    s->synthetic = synthetic;
    s->decl_type = decl_type;
    s->name = name;
    s->slot = slot;
    s->array_size = array_size;
    if (index) s->index = index->clone();
    if (value) s->value = value->clone();
    if (cond) s->cond = cond->clone();
    if (for_init) s->for_init = for_init->clone();
    if (for_step) s->for_step = for_step->clone();
    s->body.reserve(body.size());
    for (const auto& st : body) s->body.push_back(st->clone());
    s->else_body.reserve(else_body.size());
    for (const auto& st : else_body) s->else_body.push_back(st->clone());
    s->cases.reserve(cases.size());
    for (const auto& c : cases) {
        SwitchCase sc;
        sc.match = c.match;
        sc.loc = c.loc;
        sc.goal = c.goal;
        sc.body.reserve(c.body.size());
        for (const auto& st : c.body) sc.body.push_back(st->clone());
        s->cases.push_back(std::move(sc));
    }
    s->then_goal = then_goal;
    s->else_goal = else_goal;
    s->enter_goal = enter_goal;
    s->exit_goal = exit_goal;
    s->default_goal = default_goal;
    s->error_goal = error_goal;
    return s;
}

FunctionDef FunctionDef::clone() const {
    FunctionDef f;
    f.name = name;
    f.return_type = return_type;
    f.params = params;
    f.loc = loc;
    f.locals = locals;
    f.body.reserve(body.size());
    for (const auto& s : body) f.body.push_back(s->clone());
    return f;
}

Ast Ast::clone() const {
    Ast a;
    a.entry = entry;
    a.filename = filename;
    a.arch = arch;
    a.functions.reserve(functions.size());
    for (const auto& f : functions) a.functions.push_back(f.clone());
    return a;
}

}  // namespace tgen::frontend
