#include <string>
#include <vector>

#include "tgen/frontend/ast.hpp"
#include "tgen/frontend/parser.hpp"

namespace tgen::frontend {

namespace {

// Rewrites &&, ||, ?: into explicit if statements over fresh temporaries and
// turns `for` into `while`. Runs on a type-checked AST and keeps every node
// typed; short-circuit evaluation order is preserved by nesting the
// right-hand side's preparation statements inside the branch that runs it.
class Lowerer {
public:
    explicit Lowerer(const Ast& ast) : src_(ast) {}

    Ast run() {
        Ast out;
        out.entry = src_.entry;
        out.filename = src_.filename;
        out.arch = src_.arch;
        for (const auto& f : src_.functions) {
            fn_src_ = &f;
            FunctionDef nf;
            nf.name = f.name;
            nf.return_type = f.return_type;
            nf.params = f.params;
            nf.loc = f.loc;
            nf.locals = f.locals;
            fn_out_ = &nf;
            temp_counter_ = 0;
            nf.body = lower_block(f.body);
            out.functions.push_back(std::move(nf));
        }
        return out;
    }

private:
    const Ast& src_;
    const FunctionDef* fn_src_ = nullptr;
    FunctionDef* fn_out_ = nullptr;
    int temp_counter_ = 0;

    bool name_in_use(const std::string& n) const {
        for (const auto& l : fn_out_->locals)
            if (l.name == n) return true;
        return false;
    }

    // Fresh int-typed temporary; returns its slot.
    int fresh_temp(TypeDesc t, std::vector<StmtPtr>& pre, SrcLoc loc) {
        std::string name;
        do {
            name = "__t" + std::to_string(temp_counter_++);
        } while (name_in_use(name));
        int slot = static_cast<int>(fn_out_->locals.size());
        fn_out_->locals.push_back({name, t, std::nullopt});
        auto d = std::make_unique<Stmt>();
        d->kind = Stmt::Kind::Decl;
        d->loc = loc;
        d->synthetic = true;
        d->decl_type = t;
        d->name = name;
        d->slot = slot;
        pre.push_back(std::move(d));
        return slot;
    }

    ExprPtr temp_ref(int slot, SrcLoc loc) const {
        auto v = std::make_unique<Expr>();
        v->kind = Expr::Kind::Var;
        v->type = fn_out_->locals[slot].type;
        v->loc = loc;
        v->name = fn_out_->locals[slot].name;
        v->slot = slot;
        return v;
    }

    static ExprPtr int_lit(uint64_t raw, TypeDesc t, SrcLoc loc) {
        auto e = std::make_unique<Expr>();
        e->kind = Expr::Kind::IntLit;
        e->type = t;
        e->loc = loc;
        e->value = mask_width(raw, t.width);
        return e;
    }

    static StmtPtr assign_slot(int slot, const std::string& name, ExprPtr value, SrcLoc loc) {
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::Assign;
        s->loc = loc;
        s->synthetic = true;
        s->name = name;
        s->slot = slot;
        s->value = std::move(value);
        return s;
    }

    static StmtPtr make_if(ExprPtr cond, std::vector<StmtPtr> then_b,
                           std::vector<StmtPtr> else_b, SrcLoc loc) {
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::If;
        s->loc = loc;
        s->synthetic = true;
        s->cond = std::move(cond);
        s->body = std::move(then_b);
        s->else_body = std::move(else_b);
        return s;
    }

    std::vector<StmtPtr> lower_block(const std::vector<StmtPtr>& body) {
        std::vector<StmtPtr> out;
        for (const auto& s : body) lower_stmt(*s, out);
        return out;
    }

    void lower_stmt(const Stmt& s, std::vector<StmtPtr>& out) {
        switch (s.kind) {
            case Stmt::Kind::Block: {
                auto b = std::make_unique<Stmt>();
                b->kind = Stmt::Kind::Block;
                b->loc = s.loc;
                b->synthetic = s.synthetic;
                b->body = lower_block(s.body);
                out.push_back(std::move(b));
                break;
            }
            case Stmt::Kind::Decl: {
                auto d = std::make_unique<Stmt>();
                d->kind = Stmt::Kind::Decl;
                d->loc = s.loc;
                d->synthetic = s.synthetic;
                d->decl_type = s.decl_type;
                d->name = s.name;
                d->slot = s.slot;
                d->array_size = s.array_size;
                if (s.value) d->value = lower_expr(*s.value, out);
                out.push_back(std::move(d));
                break;
            }
            case Stmt::Kind::Assign: {
                auto a = std::make_unique<Stmt>();
                a->kind = Stmt::Kind::Assign;
                a->loc = s.loc;
                a->synthetic = s.synthetic;
                a->name = s.name;
                a->slot = s.slot;
                if (s.index) a->index = lower_expr(*s.index, out);
                a->value = lower_expr(*s.value, out);
                out.push_back(std::move(a));
                break;
            }
            case Stmt::Kind::If: {
                ExprPtr c = lower_expr(*s.cond, out);
                auto i = std::make_unique<Stmt>();
                i->kind = Stmt::Kind::If;
                i->loc = s.loc;
                i->synthetic = s.synthetic;
                i->cond = std::move(c);
                i->body = lower_block(s.body);
                i->else_body = lower_block(s.else_body);
                out.push_back(std::move(i));
                break;
            }
            case Stmt::Kind::While: {
                std::vector<StmtPtr> pre;
                ExprPtr c = lower_expr(*s.cond, pre);
                std::vector<StmtPtr> body = lower_block(s.body);
                emit_loop(s, std::move(pre), std::move(c), std::move(body), nullptr, out);
                break;
            }
            case Stmt::Kind::For: {
                // { init; pre; while (c) { body; step; pre-again; } }
                auto blk = std::make_unique<Stmt>();
                blk->kind = Stmt::Kind::Block;
                blk->loc = s.loc;
                blk->synthetic = true;
                if (s.for_init) lower_stmt(*s.for_init, blk->body);
                std::vector<StmtPtr> pre;
                ExprPtr c = s.cond ? lower_expr(*s.cond, pre)
                                   : int_lit(1, TypeDesc::int32(), s.loc);
                std::vector<StmtPtr> body = lower_block(s.body);
                if (s.for_step) lower_stmt(*s.for_step, body);
                emit_loop(s, std::move(pre), std::move(c), std::move(body), nullptr, blk->body);
                out.push_back(std::move(blk));
                break;
            }
            case Stmt::Kind::Switch: {
                ExprPtr c = lower_expr(*s.cond, out);
                auto sw = std::make_unique<Stmt>();
                sw->kind = Stmt::Kind::Switch;
                sw->loc = s.loc;
                sw->synthetic = s.synthetic;
                sw->cond = std::move(c);
                for (const auto& cs : s.cases) {
                    SwitchCase nc;
                    nc.match = cs.match;
                    nc.loc = cs.loc;
                    nc.body = lower_block(cs.body);
                    sw->cases.push_back(std::move(nc));
                }
                out.push_back(std::move(sw));
                break;
            }
            case Stmt::Kind::Return:
            case Stmt::Kind::Exit: {
                auto r = std::make_unique<Stmt>();
                r->kind = s.kind;
                r->loc = s.loc;
                r->synthetic = s.synthetic;
                if (s.value) r->value = lower_expr(*s.value, out);
                out.push_back(std::move(r));
                break;
            }
            case Stmt::Kind::ExprStmt: {
                auto r = std::make_unique<Stmt>();
                r->kind = s.kind;
                r->loc = s.loc;
                r->synthetic = s.synthetic;
                r->value = lower_expr(*s.value, out);
                out.push_back(std::move(r));
                break;
            }
            case Stmt::Kind::Assume: {
                auto r = std::make_unique<Stmt>();
                r->kind = s.kind;
                r->loc = s.loc;
                r->synthetic = s.synthetic;
                r->cond = lower_expr(*s.cond, out);
                out.push_back(std::move(r));
                break;
            }
            case Stmt::Kind::Error:
            case Stmt::Kind::Abort: {
                out.push_back(s.clone());
                break;
            }
        }
    }

    // Shared loop emission: condition preparation statements run before the
    // loop and again at the end of each iteration.
    void emit_loop(const Stmt& src, std::vector<StmtPtr> pre, ExprPtr cond,
                   std::vector<StmtPtr> body, const Stmt* /*unused*/,
                   std::vector<StmtPtr>& out) {
        std::vector<StmtPtr> pre_clone;
        pre_clone.reserve(pre.size());
        for (const auto& p : pre) pre_clone.push_back(p->clone());
        for (auto& p : pre) out.push_back(std::move(p));
        auto w = std::make_unique<Stmt>();
        w->kind = Stmt::Kind::While;
        w->loc = src.loc;
        w->synthetic = src.synthetic;
        w->cond = std::move(cond);
        w->body = std::move(body);
        for (auto& p : pre_clone) w->body.push_back(std::move(p));
        out.push_back(std::move(w));
    }

    ExprPtr lower_expr(const Expr& e, std::vector<StmtPtr>& pre) {
        switch (e.kind) {
            case Expr::Kind::IntLit:
            case Expr::Kind::Var:
            case Expr::Kind::Nondet:
                return e.clone();
            case Expr::Kind::Index: {
                auto r = e.clone();
                r->b = lower_expr(*e.b, pre);
                return r;
            }
            case Expr::Kind::Unary:
            case Expr::Kind::Cast:
            case Expr::Kind::BoolCast: {
                auto r = e.clone();
                r->a = lower_expr(*e.a, pre);
                return r;
            }
            case Expr::Kind::Call: {
                auto r = e.clone();
                r->args.clear();
                for (const auto& arg : e.args) r->args.push_back(lower_expr(*arg, pre));
                return r;
            }
            case Expr::Kind::Binary: {
                if (e.bop == BinOp::LogAnd || e.bop == BinOp::LogOr)
                    return lower_short_circuit(e, pre);
                auto r = e.clone();
                r->a = lower_expr(*e.a, pre);
                r->b = lower_expr(*e.b, pre);
                return r;
            }
            case Expr::Kind::Ternary: {
                ExprPtr c = lower_expr(*e.a, pre);
                int slot = fresh_temp(e.type, pre, e.loc);
                const std::string& name = fn_out_->locals[slot].name;
                std::vector<StmtPtr> then_b, else_b;
                ExprPtr tv = lower_expr(*e.b, then_b);
                then_b.push_back(assign_slot(slot, name, std::move(tv), e.loc));
                ExprPtr ev = lower_expr(*e.c, else_b);
                else_b.push_back(assign_slot(slot, name, std::move(ev), e.loc));
                pre.push_back(make_if(std::move(c), std::move(then_b), std::move(else_b), e.loc));
                return temp_ref(slot, e.loc);
            }
        }
        return e.clone();
    }

    ExprPtr lower_short_circuit(const Expr& e, std::vector<StmtPtr>& pre) {
        ExprPtr a = lower_expr(*e.a, pre);
        int slot = fresh_temp(TypeDesc::int32(), pre, e.loc);
        const std::string& name = fn_out_->locals[slot].name;

        // inner: t = (b != 0) via nested if to keep everything decision-form
        std::vector<StmtPtr> rhs_block;
        ExprPtr b = lower_expr(*e.b, rhs_block);
        std::vector<StmtPtr> rhs_then, rhs_else;
        rhs_then.push_back(assign_slot(slot, name, int_lit(1, TypeDesc::int32(), e.loc), e.loc));
        rhs_else.push_back(assign_slot(slot, name, int_lit(0, TypeDesc::int32(), e.loc), e.loc));
        rhs_block.push_back(
            make_if(std::move(b), std::move(rhs_then), std::move(rhs_else), e.loc));

        std::vector<StmtPtr> other;
        other.push_back(assign_slot(
            slot, name,
            int_lit(e.bop == BinOp::LogAnd ? 0 : 1, TypeDesc::int32(), e.loc), e.loc));

        if (e.bop == BinOp::LogAnd) {
            pre.push_back(make_if(std::move(a), std::move(rhs_block), std::move(other), e.loc));
        } else {
            pre.push_back(make_if(std::move(a), std::move(other), std::move(rhs_block), e.loc));
        }
        return temp_ref(slot, e.loc);
    }
};

}  // namespace

Ast lower_decisions(const Ast& ast) {
    Lowerer l(ast);
    return l.run();
}

}  // namespace tgen::frontend
