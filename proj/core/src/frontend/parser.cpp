#include "tgen/frontend/parser.hpp"

#include <cassert>
#include <map>

#include "tgen/frontend/lexer.hpp"

namespace tgen::frontend {

namespace {

struct ParseErr {
    Diagnostic d;
};

[[noreturn]] void fail(Diagnostic::Code code, SrcLoc loc, std::string msg) {
    throw ParseErr{{Diagnostic::Severity::Error, code, loc, std::move(msg)}};
}

ExprPtr make_expr(Expr::Kind k, SrcLoc loc) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->loc = loc;
    return e;
}

StmtPtr make_stmt(Stmt::Kind k, SrcLoc loc) {
    auto s = std::make_unique<Stmt>();
    s->kind = k;
    s->loc = loc;
    return s;
}

std::optional<TypeDesc> nondet_type(std::string_view name, int arch) {
    if (name == "bool") return TypeDesc::boolean();
    if (name == "char") return TypeDesc::s(8);
    if (name == "short") return TypeDesc::s(16);
    if (name == "int") return TypeDesc::s(32);
    if (name == "uint") return TypeDesc::u(32);
    if (name == "long") return TypeDesc::s(static_cast<uint8_t>(arch));
    if (name == "ulong") return TypeDesc::u(static_cast<uint8_t>(arch));
    if (name == "longlong") return TypeDesc::s(64);
    return std::nullopt;
}

class Parser {
public:
    Parser(std::vector<Token> toks, const FrontendOptions& opts)
        : toks_(std::move(toks)), opts_(opts) {}

    Ast parse() {
        Ast ast;
        ast.arch = opts_.arch;
        ast.entry = opts_.entry;
        while (!peek().is(Token::Kind::End)) {
            parse_top_level(ast);
        }
        return ast;
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
    const FrontendOptions& opts_;

    const Token& peek(size_t off = 0) const {
        size_t i = pos_ + off;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool accept(std::string_view p) {
        if (peek().punct(p)) {
            advance();
            return true;
        }
        return false;
    }
    void expect(std::string_view p, const char* what) {
        if (!accept(p))
            fail(Diagnostic::Code::SyntaxError, peek().loc,
                 std::string("expected '") + std::string(p) + "' " + what);
    }
    bool accept_kw(std::string_view k) {
        if (peek().keyword(k)) {
            advance();
            return true;
        }
        return false;
    }

    bool at_type() const {
        const Token& t = peek();
        if (!t.is(Token::Kind::Keyword)) return false;
        return t.text == "int" || t.text == "char" || t.text == "short" ||
               t.text == "long" || t.text == "unsigned" || t.text == "signed" ||
               t.text == "_Bool" || t.text == "bool" || t.text == "void" ||
               t.text == "float" || t.text == "double" || t.text == "struct" ||
               t.text == "union" || t.text == "enum" || t.text == "const" ||
               t.text == "extern" || t.text == "static" || t.text == "volatile";
    }

    // Parses a type specifier; nullopt means void. Qualifiers are ignored.
    std::optional<TypeDesc> parse_type() {
        SrcLoc loc = peek().loc;
        while (accept_kw("const") || accept_kw("extern") || accept_kw("static") ||
               accept_kw("volatile")) {
        }
        if (peek().keyword("float") || peek().keyword("double"))
            fail(Diagnostic::Code::UnsupportedFeature, loc,
                 "floating-point type '" + peek().text + "' is not supported");
        if (peek().keyword("struct") || peek().keyword("union") || peek().keyword("enum"))
            fail(Diagnostic::Code::UnsupportedFeature, loc,
                 "'" + peek().text + "' types are not supported");
        if (accept_kw("void")) return std::nullopt;
        if (accept_kw("_Bool") || accept_kw("bool")) return TypeDesc::boolean();

        int sign = 0;  // 0 unset, 1 signed, 2 unsigned
        if (accept_kw("unsigned")) sign = 2;
        else if (accept_kw("signed")) sign = 1;

        int longs = 0;
        bool have_base = false;
        uint8_t width = 32;
        if (accept_kw("char")) {
            width = 8;
            have_base = true;
        } else if (accept_kw("short")) {
            width = 16;
            have_base = true;
            accept_kw("int");
        } else {
            while (accept_kw("long")) longs++;
            if (longs > 0) {
                width = longs >= 2 ? 64 : static_cast<uint8_t>(opts_.arch);
                have_base = true;
            }
            if (accept_kw("int")) have_base = true;
        }
        if (!have_base && sign == 0)
            fail(Diagnostic::Code::SyntaxError, loc, "expected type specifier");
        TypeDesc t = sign == 2 ? TypeDesc::u(width) : TypeDesc::s(width);
        return t;
    }

    void reject_pointer(SrcLoc loc) {
        if (peek().punct("*"))
            fail(Diagnostic::Code::UnsupportedFeature, loc,
                 "pointer types are not supported");
    }

    void parse_top_level(Ast& ast) {
        SrcLoc loc = peek().loc;
        if (!at_type())
            fail(Diagnostic::Code::SyntaxError, loc, "expected function definition");
        std::optional<TypeDesc> ret = parse_type();
        reject_pointer(loc);
        if (!peek().is(Token::Kind::Ident))
            fail(Diagnostic::Code::SyntaxError, peek().loc, "expected identifier");
        std::string name = advance().text;

        if (!peek().punct("(")) {
            // Top-level object declaration.
            fail(Diagnostic::Code::UnsupportedFeature, loc,
                 "global variables are not supported");
        }
        expect("(", "after function name");

        std::vector<Param> params;
        if (!peek().punct(")")) {
            if (peek().keyword("void") && peek(1).punct(")")) {
                advance();
            } else {
                for (;;) {
                    SrcLoc ploc = peek().loc;
                    std::optional<TypeDesc> pt = parse_type();
                    if (!pt)
                        fail(Diagnostic::Code::SyntaxError, ploc, "void parameter");
                    reject_pointer(ploc);
                    if (!peek().is(Token::Kind::Ident))
                        fail(Diagnostic::Code::SyntaxError, peek().loc,
                             "expected parameter name");
                    std::string pname = advance().text;
                    if (peek().punct("["))
                        fail(Diagnostic::Code::UnsupportedFeature, ploc,
                             "array parameters are not supported");
                    params.push_back({*pt, std::move(pname), ploc});
                    if (!accept(",")) break;
                }
            }
        }
        expect(")", "after parameter list");

        if (accept(";")) return;  // prototype: recorded nowhere, intrinsics are by name

        if (!peek().punct("{"))
            fail(Diagnostic::Code::SyntaxError, peek().loc, "expected function body");

        FunctionDef fn;
        fn.name = std::move(name);
        fn.return_type = ret;
        fn.params = std::move(params);
        fn.loc = loc;
        fn.body = parse_block();
        if (ast.find(fn.name))
            fail(Diagnostic::Code::TypeError, loc, "redefinition of '" + fn.name + "'");
        ast.functions.push_back(std::move(fn));
    }

    std::vector<StmtPtr> parse_block() {
        expect("{", "to open block");
        std::vector<StmtPtr> body;
        while (!peek().punct("}")) {
            if (peek().is(Token::Kind::End))
                fail(Diagnostic::Code::SyntaxError, peek().loc, "unterminated block");
            parse_item(body);
        }
        expect("}", "to close block");
        return body;
    }

    void parse_item(std::vector<StmtPtr>& out) {
        if (at_type()) {
            parse_declaration(out);
        } else {
            parse_statement(out);
        }
    }

    void parse_declaration(std::vector<StmtPtr>& out) {
        SrcLoc loc = peek().loc;
        std::optional<TypeDesc> t = parse_type();
        if (!t) fail(Diagnostic::Code::SyntaxError, loc, "cannot declare void variable");
        for (;;) {
            reject_pointer(peek().loc);
            if (!peek().is(Token::Kind::Ident))
                fail(Diagnostic::Code::SyntaxError, peek().loc, "expected declarator");
            SrcLoc dloc = peek().loc;
            std::string name = advance().text;
            auto s = make_stmt(Stmt::Kind::Decl, dloc);
            s->decl_type = *t;
            s->name = std::move(name);
            if (accept("[")) {
                ExprPtr size = parse_expr();
                if (size->kind != Expr::Kind::IntLit)
                    fail(Diagnostic::Code::UnsupportedFeature, dloc,
                         "array sizes must be integer constants");
                if (size->value == 0 || size->value > (1u << 20))
                    fail(Diagnostic::Code::TypeError, dloc, "unreasonable array size");
                s->array_size = static_cast<uint32_t>(size->value);
                expect("]", "after array size");
            }
            if (accept("=")) {
                if (s->array_size)
                    fail(Diagnostic::Code::UnsupportedFeature, dloc,
                         "array initializers are not supported");
                s->value = parse_expr();
            }
            out.push_back(std::move(s));
            if (!accept(",")) break;
        }
        expect(";", "after declaration");
    }

    void parse_statement(std::vector<StmtPtr>& out) {
        const Token& t = peek();
        SrcLoc loc = t.loc;

        if (t.punct("{")) {
            auto s = make_stmt(Stmt::Kind::Block, loc);
            s->body = parse_block();
            out.push_back(std::move(s));
            return;
        }
        if (t.punct(";")) {
            advance();
            return;  // empty statement
        }
        if (t.keyword("goto"))
            fail(Diagnostic::Code::UnsupportedFeature, loc, "goto is not supported");
        if (t.keyword("do"))
            fail(Diagnostic::Code::UnsupportedFeature, loc, "do-while loops are not supported");
        if (t.keyword("break"))
            fail(Diagnostic::Code::UnsupportedFeature, loc,
                 "break is only supported at the end of a switch case");
        if (t.keyword("continue"))
            fail(Diagnostic::Code::UnsupportedFeature, loc, "continue is not supported");
        if (t.keyword("sizeof"))
            fail(Diagnostic::Code::UnsupportedFeature, loc, "sizeof is not supported");

        if (accept_kw("if")) {
            expect("(", "after 'if'");
            auto s = make_stmt(Stmt::Kind::If, loc);
            s->cond = parse_expr();
            expect(")", "after condition");
            parse_statement_as_body(s->body);
            if (accept_kw("else")) parse_statement_as_body(s->else_body);
            out.push_back(std::move(s));
            return;
        }
        if (accept_kw("while")) {
            expect("(", "after 'while'");
            auto s = make_stmt(Stmt::Kind::While, loc);
            s->cond = parse_expr();
            expect(")", "after condition");
            parse_statement_as_body(s->body);
            out.push_back(std::move(s));
            return;
        }
        if (accept_kw("for")) {
            expect("(", "after 'for'");
            auto s = make_stmt(Stmt::Kind::For, loc);
            if (!accept(";")) {
                std::vector<StmtPtr> init;
                if (at_type()) parse_declaration(init);
                else {
                    parse_expr_statement(init);
                }
                if (init.size() != 1)
                    fail(Diagnostic::Code::SyntaxError, loc,
                         "for-initializer must be a single declaration or statement");
                s->for_init = std::move(init[0]);
            }
            if (!peek().punct(";")) s->cond = parse_expr();
            expect(";", "after loop condition");
            if (!peek().punct(")")) {
                std::vector<StmtPtr> step;
                parse_expr_statement_no_semi(step);
                if (step.size() != 1)
                    fail(Diagnostic::Code::SyntaxError, loc,
                         "for-step must be a single statement");
                s->for_step = std::move(step[0]);
            }
            expect(")", "after 'for' header");
            parse_statement_as_body(s->body);
            out.push_back(std::move(s));
            return;
        }
        if (accept_kw("switch")) {
            expect("(", "after 'switch'");
            auto s = make_stmt(Stmt::Kind::Switch, loc);
            s->cond = parse_expr();
            expect(")", "after switch value");
            expect("{", "to open switch body");
            bool saw_default = false;
            while (!peek().punct("}")) {
                SwitchCase sc;
                sc.loc = peek().loc;
                if (accept_kw("case")) {
                    ExprPtr v = parse_expr();
                    ExprPtr folded = fold_const(v.get());
                    if (!folded)
                        fail(Diagnostic::Code::TypeError, sc.loc,
                             "case label must be an integer constant");
                    sc.match = folded->value;
                } else if (accept_kw("default")) {
                    if (saw_default)
                        fail(Diagnostic::Code::SyntaxError, sc.loc, "duplicate default case");
                    saw_default = true;
                    sc.match = std::nullopt;
                } else {
                    fail(Diagnostic::Code::SyntaxError, peek().loc,
                         "expected 'case' or 'default'");
                }
                expect(":", "after case label");
                while (!peek().punct("}") && !peek().keyword("case") &&
                       !peek().keyword("default")) {
                    if (peek().keyword("break")) {
                        SrcLoc bloc = peek().loc;
                        advance();
                        expect(";", "after 'break'");
                        // cases do not fall through; a trailing break is redundant
                        if (!peek().punct("}") && !peek().keyword("case") &&
                            !peek().keyword("default"))
                            fail(Diagnostic::Code::UnsupportedFeature, bloc,
                                 "break is only supported at the end of a switch case");
                        break;
                    }
                    parse_item(sc.body);
                }
                s->cases.push_back(std::move(sc));
            }
            expect("}", "to close switch body");
            out.push_back(std::move(s));
            return;
        }
        if (accept_kw("return")) {
            auto s = make_stmt(Stmt::Kind::Return, loc);
            if (!peek().punct(";")) s->value = parse_expr();
            expect(";", "after return");
            out.push_back(std::move(s));
            return;
        }

        parse_expr_statement(out);
    }

    void parse_statement_as_body(std::vector<StmtPtr>& body) {
        // A single statement may desugar to several; keep them grouped.
        std::vector<StmtPtr> tmp;
        if (at_type())
            fail(Diagnostic::Code::SyntaxError, peek().loc,
                 "declaration requires enclosing braces here");
        parse_statement(tmp);
        for (auto& s : tmp) body.push_back(std::move(s));
    }

    void parse_expr_statement(std::vector<StmtPtr>& out) {
        parse_expr_statement_no_semi(out);
        expect(";", "after statement");
    }

    // Handles assignments (including chained and compound forms), ++/--,
    // intrinsic calls, and plain expression statements.
    void parse_expr_statement_no_semi(std::vector<StmtPtr>& out) {
        SrcLoc loc = peek().loc;

        if (peek().punct("++") || peek().punct("--")) {
            bool inc = advance().text == "++";
            ExprPtr lv = parse_postfix();
            emit_inc_dec(out, std::move(lv), inc, loc);
            return;
        }

        ExprPtr e = parse_expr();

        if (peek().punct("++") || peek().punct("--")) {
            bool inc = advance().text == "++";
            emit_inc_dec(out, std::move(e), inc, loc);
            return;
        }

        static const std::map<std::string, BinOp> compound = {
            {"+=", BinOp::Add},   {"-=", BinOp::Sub},  {"*=", BinOp::Mul},
            {"/=", BinOp::Div},   {"%=", BinOp::Rem},  {"&=", BinOp::BitAnd},
            {"|=", BinOp::BitOr}, {"^=", BinOp::BitXor}, {"<<=", BinOp::Shl},
            {">>=", BinOp::Shr},
        };

        if (peek().punct("=")) {
            advance();
            emit_assign_chain(out, std::move(e), loc);
            return;
        }
        if (peek().is(Token::Kind::Punct)) {
            auto it = compound.find(peek().text);
            if (it != compound.end()) {
                advance();
                ExprPtr rhs = parse_expr();
                ExprPtr cur = clone_lvalue(e.get());
                auto op = make_expr(Expr::Kind::Binary, loc);
                op->bop = it->second;
                op->a = std::move(cur);
                op->b = std::move(rhs);
                out.push_back(build_assign(std::move(e), std::move(op), loc));
                return;
            }
        }

        // Plain expression statement (typically a call).
        auto s = make_stmt(Stmt::Kind::ExprStmt, loc);
        s->value = std::move(e);
        out.push_back(promote_intrinsic_stmt(std::move(s)));
    }

    void emit_inc_dec(std::vector<StmtPtr>& out, ExprPtr lv, bool inc, SrcLoc loc) {
        ExprPtr cur = clone_lvalue(lv.get());
        auto one = make_expr(Expr::Kind::IntLit, loc);
        one->value = 1;
        one->type = TypeDesc::int32();
        auto op = make_expr(Expr::Kind::Binary, loc);
        op->bop = inc ? BinOp::Add : BinOp::Sub;
        op->a = std::move(cur);
        op->b = std::move(one);
        out.push_back(build_assign(std::move(lv), std::move(op), loc));
    }

    // x = y = z = e  desugars right-to-left into a sequence of assignments.
    void emit_assign_chain(std::vector<StmtPtr>& out, ExprPtr target, SrcLoc loc) {
        std::vector<ExprPtr> targets;
        targets.push_back(std::move(target));
        ExprPtr rhs;
        for (;;) {
            ExprPtr e = parse_expr();
            if (accept("=")) {
                targets.push_back(std::move(e));
                continue;
            }
            rhs = std::move(e);
            break;
        }
        // innermost assignment first
        ExprPtr last_target;
        for (size_t i = targets.size(); i-- > 0;) {
            ExprPtr val = last_target ? clone_lvalue(last_target.get()) : std::move(rhs);
            last_target = clone_lvalue(targets[i].get());
            out.push_back(build_assign(std::move(targets[i]), std::move(val), loc));
        }
    }

    ExprPtr clone_lvalue(const Expr* e) {
        if (e->kind != Expr::Kind::Var && e->kind != Expr::Kind::Index)
            fail(Diagnostic::Code::SyntaxError, e->loc, "expected assignable expression");
        return e->clone();
    }

    StmtPtr build_assign(ExprPtr lv, ExprPtr value, SrcLoc loc) {
        if (lv->kind == Expr::Kind::Var) {
            auto s = make_stmt(Stmt::Kind::Assign, loc);
            s->name = lv->name;
            s->value = std::move(value);
            return s;
        }
        if (lv->kind == Expr::Kind::Index) {
            auto s = make_stmt(Stmt::Kind::Assign, loc);
            s->name = lv->a->name;
            s->index = std::move(lv->b);
            s->value = std::move(value);
            return s;
        }
        fail(Diagnostic::Code::SyntaxError, loc, "expected assignable expression");
    }

    // Recognizes intrinsic calls in statement position and converts them to
    // dedicated statement kinds.
    StmtPtr promote_intrinsic_stmt(StmtPtr s) {
        Expr* e = s->value.get();
        if (!e || e->kind != Expr::Kind::Call) return s;
        const std::string& callee = e->name;
        if (callee == opts_.error_function) {
            auto r = make_stmt(Stmt::Kind::Error, s->loc);
            r->name = callee;
            return r;
        }
        if (callee == "__VERIFIER_assume" || callee == "assume_abort_if_not") {
            if (e->args.size() != 1)
                fail(Diagnostic::Code::TypeError, s->loc,
                     callee + " takes exactly one argument");
            auto r = make_stmt(Stmt::Kind::Assume, s->loc);
            r->cond = std::move(e->args[0]);
            return r;
        }
        if (callee == "abort") {
            if (!e->args.empty())
                fail(Diagnostic::Code::TypeError, s->loc, "abort takes no arguments");
            return make_stmt(Stmt::Kind::Abort, s->loc);
        }
        if (callee == "exit") {
            if (e->args.size() != 1)
                fail(Diagnostic::Code::TypeError, s->loc, "exit takes exactly one argument");
            auto r = make_stmt(Stmt::Kind::Exit, s->loc);
            r->value = std::move(e->args[0]);
            return r;
        }
        if (callee == "malloc" || callee == "calloc" || callee == "realloc" ||
            callee == "free" || callee == "alloca")
            fail(Diagnostic::Code::UnsupportedFeature, s->loc,
                 "dynamic allocation is not supported");
        return s;
    }

    // ---- expressions ----

    ExprPtr parse_expr() { return parse_ternary(); }

    ExprPtr parse_ternary() {
        ExprPtr c = parse_binary(0);
        if (accept("?")) {
            auto e = make_expr(Expr::Kind::Ternary, c->loc);
            e->a = std::move(c);
            e->b = parse_expr();
            expect(":", "in conditional expression");
            e->c = parse_ternary();
            return e;
        }
        return c;
    }

    struct OpLevel {
        const char* spelling;
        BinOp op;
        int prec;
    };

    static const std::vector<OpLevel>& binary_ops() {
        static const std::vector<OpLevel> ops = {
            {"||", BinOp::LogOr, 1},  {"&&", BinOp::LogAnd, 2},
            {"|", BinOp::BitOr, 3},   {"^", BinOp::BitXor, 4},
            {"&", BinOp::BitAnd, 5},  {"==", BinOp::Eq, 6},
            {"!=", BinOp::Ne, 6},     {"<", BinOp::Lt, 7},
            {">", BinOp::Gt, 7},      {"<=", BinOp::Le, 7},
            {">=", BinOp::Ge, 7},     {"<<", BinOp::Shl, 8},
            {">>", BinOp::Shr, 8},    {"+", BinOp::Add, 9},
            {"-", BinOp::Sub, 9},     {"*", BinOp::Mul, 10},
            {"/", BinOp::Div, 10},    {"%", BinOp::Rem, 10},
        };
        return ops;
    }

    const OpLevel* match_binop(int min_prec) {
        if (!peek().is(Token::Kind::Punct)) return nullptr;
        for (const auto& o : binary_ops())
            if (o.prec >= min_prec && peek().text == o.spelling) return &o;
        return nullptr;
    }

    ExprPtr parse_binary(int min_prec) {
        ExprPtr lhs = parse_unary();
        for (;;) {
            const OpLevel* op = match_binop(min_prec);
            if (!op) return lhs;
            SrcLoc loc = peek().loc;
            advance();
            ExprPtr rhs = parse_binary(op->prec + 1);
            auto e = make_expr(Expr::Kind::Binary, loc);
            e->bop = op->op;
            e->a = std::move(lhs);
            e->b = std::move(rhs);
            lhs = std::move(e);
        }
    }

    ExprPtr parse_unary() {
        SrcLoc loc = peek().loc;
        if (peek().punct("*"))
            fail(Diagnostic::Code::UnsupportedFeature, loc,
                 "pointer dereference is not supported");
        if (peek().punct("&"))
            fail(Diagnostic::Code::UnsupportedFeature, loc,
                 "address-of is not supported");
        static const std::map<std::string, UnOp> unops = {
            {"-", UnOp::Neg}, {"~", UnOp::BitNot}, {"!", UnOp::LogNot}, {"+", UnOp::Plus}};
        if (peek().is(Token::Kind::Punct)) {
            auto it = unops.find(peek().text);
            if (it != unops.end()) {
                advance();
                auto e = make_expr(Expr::Kind::Unary, loc);
                e->uop = it->second;
                e->a = parse_unary();
                return e;
            }
        }
        // cast: '(' type ')' unary
        if (peek().punct("(") && peek(1).is(Token::Kind::Keyword)) {
            const std::string& kw = peek(1).text;
            if (kw != "sizeof") {
                size_t save = pos_;
                advance();
                if (at_type()) {
                    std::optional<TypeDesc> t = parse_type();
                    if (peek().punct(")") && t) {
                        advance();
                        auto e = make_expr(Expr::Kind::Cast, loc);
                        e->type = *t;
                        e->a = parse_unary();
                        return e;
                    }
                    if (!t)
                        fail(Diagnostic::Code::TypeError, loc, "cannot cast to void");
                }
                pos_ = save;
            }
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        while (accept("[")) {
            if (e->kind != Expr::Kind::Var)
                fail(Diagnostic::Code::UnsupportedFeature, e->loc,
                     "only named arrays can be indexed");
            auto idx = make_expr(Expr::Kind::Index, e->loc);
            idx->a = std::move(e);
            idx->b = parse_expr();
            expect("]", "after array index");
            e = std::move(idx);
        }
        return e;
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        SrcLoc loc = t.loc;
        if (t.is(Token::Kind::IntLit)) {
            advance();
            auto e = make_expr(Expr::Kind::IntLit, loc);
            e->value = t.value;
            e->type = literal_type(t);
            e->value = mask_width(e->value, e->type.width);
            return e;
        }
        if (t.punct("(")) {
            advance();
            ExprPtr e = parse_expr();
            expect(")", "after parenthesized expression");
            return e;
        }
        if (t.is(Token::Kind::Ident)) {
            std::string name = advance().text;
            if (peek().punct("(")) {
                advance();
                std::vector<ExprPtr> args;
                if (!peek().punct(")")) {
                    for (;;) {
                        args.push_back(parse_expr());
                        if (!accept(",")) break;
                    }
                }
                expect(")", "after call arguments");
                // nondet intrinsics
                if (name.rfind("__VERIFIER_nondet_", 0) == 0) {
                    std::string suffix = name.substr(18);
                    std::optional<TypeDesc> nt = nondet_type(suffix, opts_.arch);
                    if (!nt)
                        fail(Diagnostic::Code::UnsupportedFeature, loc,
                             "unsupported nondet type '" + suffix + "'");
                    if (!args.empty())
                        fail(Diagnostic::Code::TypeError, loc,
                             name + " takes no arguments");
                    auto e = make_expr(Expr::Kind::Nondet, loc);
                    e->type = *nt;
                    return e;
                }
                auto e = make_expr(Expr::Kind::Call, loc);
                e->name = std::move(name);
                e->args = std::move(args);
                return e;
            }
            auto e = make_expr(Expr::Kind::Var, loc);
            e->name = std::move(name);
            return e;
        }
        fail(Diagnostic::Code::SyntaxError, loc,
             "unexpected token '" + (t.is(Token::Kind::End) ? "<eof>" : t.text) + "'");
    }

    TypeDesc literal_type(const Token& t) const {
        uint64_t v = t.value;
        auto arch_w = static_cast<uint8_t>(opts_.arch);
        switch (t.suffix) {
            case 'u': return v <= 0xFFFFFFFFull ? TypeDesc::u(32) : TypeDesc::u(64);
            case 'U': return TypeDesc::u(64);
            case 'l':
                if (arch_w == 32)
                    return v <= 0x7FFFFFFFull ? TypeDesc::s(32) : TypeDesc::s(64);
                return TypeDesc::s(64);
            case 'L': return TypeDesc::s(64);
            default: break;
        }
        if (t.hex) {
            if (v <= 0x7FFFFFFFull) return TypeDesc::s(32);
            if (v <= 0xFFFFFFFFull) return TypeDesc::u(32);
            if (v <= 0x7FFFFFFFFFFFFFFFull) return TypeDesc::s(64);
            return TypeDesc::u(64);
        }
        if (v <= 0x7FFFFFFFull) return TypeDesc::s(32);
        if (v <= 0x7FFFFFFFFFFFFFFFull) return TypeDesc::s(64);
        return TypeDesc::u(64);
    }

    // Constant folding for case labels; returns an IntLit or null.
    ExprPtr fold_const(const Expr* e) {
        switch (e->kind) {
            case Expr::Kind::IntLit: return e->clone();
            case Expr::Kind::Unary: {
                ExprPtr a = fold_const(e->a.get());
                if (!a) return nullptr;
                auto r = make_expr(Expr::Kind::IntLit, e->loc);
                r->type = a->type;
                r->value = eval_un(e->uop, a->type, a->value);
                if (e->uop == UnOp::LogNot) r->type = TypeDesc::int32();
                return r;
            }
            case Expr::Kind::Binary: {
                ExprPtr a = fold_const(e->a.get());
                ExprPtr b = fold_const(e->b.get());
                if (!a || !b) return nullptr;
                TypeDesc ct = common_type(a->type, b->type);
                uint64_t av = convert_raw(a->value, a->type, ct);
                uint64_t bv = convert_raw(b->value, b->type, ct);
                EvalResult res;
                if (e->bop == BinOp::Shl || e->bop == BinOp::Shr) {
                    TypeDesc lt = promote(a->type);
                    res.raw = eval_shift(e->bop, lt, promote(b->type),
                                         convert_raw(a->value, a->type, lt),
                                         convert_raw(b->value, b->type, promote(b->type)));
                    ct = lt;
                } else {
                    res = eval_bin(e->bop, ct, av, bv);
                }
                if (res.trapped) return nullptr;
                auto r = make_expr(Expr::Kind::IntLit, e->loc);
                r->type = is_comparison(e->bop) ? TypeDesc::int32() : ct;
                r->value = res.raw;
                return r;
            }
            default: return nullptr;
        }
    }
};

}  // namespace

// Implemented in typecheck.cpp
Diagnostics typecheck(Ast& ast, const FrontendOptions& opts);

ParseResult parse_unlowered(std::string_view source, const FrontendOptions& opts) {
    ParseResult result;
    try {
        Parser p(lex(source), opts);
        Ast ast = p.parse();
        Diagnostics diags = typecheck(ast, opts);
        result.diagnostics = std::move(diags);
        if (!has_errors(result.diagnostics)) result.ast = std::move(ast);
    } catch (const LexError& e) {
        result.diagnostics.push_back({Diagnostic::Severity::Error,
                                      Diagnostic::Code::SyntaxError, e.loc, e.message});
    } catch (const ParseErr& e) {
        result.diagnostics.push_back(e.d);
    }
    return result;
}

ParseResult parse_program(std::string_view source, const FrontendOptions& opts) {
    ParseResult r = parse_unlowered(source, opts);
    if (r.ok()) r.ast = lower_decisions(*r.ast);
    return r;
}

}  // namespace tgen::frontend
