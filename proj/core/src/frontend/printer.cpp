#include "tgen/frontend/printer.hpp"

#include <sstream>

namespace tgen::frontend {

namespace {

std::string literal_text(uint64_t raw, TypeDesc t) {
    if (t.is_bool()) return raw ? "1" : "0";
    if (t.kind == TypeDesc::Kind::Unsigned) {
        std::string s = std::to_string(raw);
        return s + (t.width == 64 ? "ull" : "u");
    }
    int64_t v = sign_extend(raw, t.width);
    std::string s = std::to_string(v);
    if (t.width == 64) s += "LL";
    return s;
}

std::string nondet_name(const Expr& e) {
    if (!e.name.empty()) return e.name;
    // fallback for synthesized nodes
    TypeDesc t = e.type;
    if (t.is_bool()) return "bool";
    if (t.kind == TypeDesc::Kind::Unsigned) return t.width == 64 ? "ulong" : "uint";
    switch (t.width) {
        case 8: return "char";
        case 16: return "short";
        case 64: return "longlong";
        default: return "int";
    }
}

class Printer {
public:
    std::string run(const Ast& ast) {
        for (const auto& f : ast.functions) print_function(f);
        return out_.str();
    }

private:
    std::ostringstream out_;
    int indent_ = 0;

    void nl() {
        out_ << "\n";
        for (int i = 0; i < indent_; i++) out_ << "  ";
    }

    void print_function(const FunctionDef& f) {
        out_ << (f.return_type ? f.return_type->str() : "void") << " " << f.name << "(";
        for (size_t i = 0; i < f.params.size(); i++) {
            if (i) out_ << ", ";
            out_ << f.params[i].type.str() << " " << f.params[i].name;
        }
        out_ << ")";
        print_braced(f.body);
        out_ << "\n\n";
    }

    void print_braced(const std::vector<StmtPtr>& body) {
        out_ << " {";
        indent_++;
        for (const auto& s : body) {
            nl();
            print_stmt(*s);
        }
        indent_--;
        nl();
        out_ << "}";
    }

    void print_stmt(const Stmt& s) {
        switch (s.kind) {
            case Stmt::Kind::Block:
                out_ << "{";
                indent_++;
                for (const auto& st : s.body) {
                    nl();
                    print_stmt(*st);
                }
                indent_--;
                nl();
                out_ << "}";
                break;
            case Stmt::Kind::Decl:
                print_decl(s);
                out_ << ";";
                break;
            case Stmt::Kind::Assign:
                print_assign(s);
                out_ << ";";
                break;
            case Stmt::Kind::If:
                out_ << "if (" << expr(*s.cond) << ")";
                print_braced(s.body);
                if (!s.else_body.empty()) {
                    out_ << " else";
                    print_braced(s.else_body);
                }
                break;
            case Stmt::Kind::While:
                out_ << "while (" << expr(*s.cond) << ")";
                print_braced(s.body);
                break;
            case Stmt::Kind::For:
                out_ << "for (";
                if (s.for_init) {
                    if (s.for_init->kind == Stmt::Kind::Decl) print_decl(*s.for_init);
                    else if (s.for_init->kind == Stmt::Kind::Assign) print_assign(*s.for_init);
                    else out_ << expr(*s.for_init->value);
                }
                out_ << "; ";
                if (s.cond) out_ << expr(*s.cond);
                out_ << "; ";
                if (s.for_step) {
                    if (s.for_step->kind == Stmt::Kind::Assign) print_assign(*s.for_step);
                    else if (s.for_step->kind == Stmt::Kind::ExprStmt)
                        out_ << expr(*s.for_step->value);
                }
                out_ << ")";
                print_braced(s.body);
                break;
            case Stmt::Kind::Switch:
                out_ << "switch (" << expr(*s.cond) << ") {";
                indent_++;
                for (const auto& c : s.cases) {
                    nl();
                    if (c.match)
                        out_ << "case " << literal_text(*c.match, s.cond->type) << ":";
                    else
                        out_ << "default:";
                    indent_++;
                    for (const auto& st : c.body) {
                        nl();
                        print_stmt(*st);
                    }
                    nl();
                    out_ << "break;";
                    indent_--;
                }
                indent_--;
                nl();
                out_ << "}";
                break;
            case Stmt::Kind::Return:
                out_ << "return";
                if (s.value) out_ << " " << expr(*s.value);
                out_ << ";";
                break;
            case Stmt::Kind::ExprStmt:
                out_ << expr(*s.value) << ";";
                break;
            case Stmt::Kind::Assume:
                out_ << "__VERIFIER_assume(" << expr(*s.cond) << ");";
                break;
            case Stmt::Kind::Error:
                out_ << (s.name.empty() ? "reach_error" : s.name) << "();";
                break;
            case Stmt::Kind::Exit:
                out_ << "exit(" << expr(*s.value) << ");";
                break;
            case Stmt::Kind::Abort:
                out_ << "abort();";
                break;
        }
    }

    void print_decl(const Stmt& s) {
        out_ << s.decl_type.str() << " " << s.name;
        if (s.array_size) out_ << "[" << *s.array_size << "]";
        if (s.value) out_ << " = " << expr(*s.value);
    }

    void print_assign(const Stmt& s) {
        out_ << s.name;
        if (s.index) out_ << "[" << expr(*s.index) << "]";
        out_ << " = " << expr(*s.value);
    }

    std::string expr(const Expr& e) {
        switch (e.kind) {
            case Expr::Kind::IntLit:
                return literal_text(e.value, e.type);
            case Expr::Kind::Var:
                return e.name;
            case Expr::Kind::Index:
                return e.a->name + "[" + expr(*e.b) + "]";
            case Expr::Kind::Unary:
                return std::string("(") + unop_spelling(e.uop) + expr(*e.a) + ")";
            case Expr::Kind::Binary:
                return "(" + expr(*e.a) + " " + binop_spelling(e.bop) + " " + expr(*e.b) + ")";
            case Expr::Kind::Cast:
            case Expr::Kind::BoolCast:
                return "((" + e.type.str() + ")" + expr(*e.a) + ")";
            case Expr::Kind::Ternary:
                return "(" + expr(*e.a) + " ? " + expr(*e.b) + " : " + expr(*e.c) + ")";
            case Expr::Kind::Nondet:
                return "__VERIFIER_nondet_" + nondet_name(e) + "()";
            case Expr::Kind::Call: {
                std::string s = e.name + "(";
                for (size_t i = 0; i < e.args.size(); i++) {
                    if (i) s += ", ";
                    s += expr(*e.args[i]);
                }
                return s + ")";
            }
        }
        return "?";
    }
};

class Fingerprinter {
public:
    std::string run(const Ast& ast) {
        for (const auto& f : ast.functions) {
            out_ << "(fn " << f.name << " "
                 << (f.return_type ? f.return_type->str() : "void") << " (";
            for (const auto& p : f.params) out_ << p.type.str() << ";";
            out_ << ")";
            for (const auto& s : f.body) stmt(*s);
            out_ << ")";
        }
        return out_.str();
    }

private:
    std::ostringstream out_;

    void type(TypeDesc t) {
        out_ << (t.is_bool() ? "b" : t.is_signed() ? "s" : "u") << int(t.width);
    }

    void stmt(const Stmt& s) {
        switch (s.kind) {
            case Stmt::Kind::Block:
                out_ << "(blk";
                for (const auto& st : s.body) stmt(*st);
                out_ << ")";
                break;
            case Stmt::Kind::Decl:
                out_ << "(decl " << s.slot << " ";
                type(s.decl_type);
                if (s.array_size) out_ << "[" << *s.array_size << "]";
                if (s.value) expr(*s.value);
                out_ << ")";
                break;
            case Stmt::Kind::Assign:
                out_ << "(set " << s.slot;
                if (s.index) {
                    out_ << "[";
                    expr(*s.index);
                    out_ << "]";
                }
                expr(*s.value);
                out_ << ")";
                break;
            case Stmt::Kind::If:
                out_ << "(if ";
                expr(*s.cond);
                out_ << "(";
                for (const auto& st : s.body) stmt(*st);
                out_ << ")(";
                for (const auto& st : s.else_body) stmt(*st);
                out_ << "))";
                break;
            case Stmt::Kind::While:
                out_ << "(while ";
                expr(*s.cond);
                for (const auto& st : s.body) stmt(*st);
                out_ << ")";
                break;
            case Stmt::Kind::For:
                out_ << "(for ";
                if (s.for_init) stmt(*s.for_init);
                if (s.cond) expr(*s.cond);
                if (s.for_step) stmt(*s.for_step);
                out_ << "(";
                for (const auto& st : s.body) stmt(*st);
                out_ << "))";
                break;
            case Stmt::Kind::Switch:
                out_ << "(switch ";
                expr(*s.cond);
                for (const auto& c : s.cases) {
                    out_ << "(case ";
                    if (c.match) out_ << *c.match;
                    else out_ << "default";
                    for (const auto& st : c.body) stmt(*st);
                    out_ << ")";
                }
                out_ << ")";
                break;
            case Stmt::Kind::Return:
                out_ << "(ret";
                if (s.value) expr(*s.value);
                out_ << ")";
                break;
            case Stmt::Kind::ExprStmt:
                out_ << "(expr";
                expr(*s.value);
                out_ << ")";
                break;
            case Stmt::Kind::Assume:
                out_ << "(assume";
                expr(*s.cond);
                out_ << ")";
                break;
            case Stmt::Kind::Error:
                out_ << "(error)";
                break;
            case Stmt::Kind::Exit:
                out_ << "(exit";
                expr(*s.value);
                out_ << ")";
                break;
            case Stmt::Kind::Abort:
                out_ << "(abort)";
                break;
        }
    }

    void expr(const Expr& e) {
        out_ << "(";
        switch (e.kind) {
            case Expr::Kind::IntLit:
                out_ << "lit ";
                type(e.type);
                out_ << " " << e.value;
                break;
            case Expr::Kind::Var:
                out_ << "var " << e.slot;
                break;
            case Expr::Kind::Index:
                out_ << "idx " << e.a->slot;
                expr(*e.b);
                break;
            case Expr::Kind::Unary:
                out_ << "un " << unop_spelling(e.uop);
                expr(*e.a);
                break;
            case Expr::Kind::Binary:
                out_ << "bin " << binop_spelling(e.bop);
                expr(*e.a);
                expr(*e.b);
                break;
            case Expr::Kind::Cast:
            case Expr::Kind::BoolCast:
                out_ << "cast ";
                type(e.type);
                expr(*e.a);
                break;
            case Expr::Kind::Ternary:
                out_ << "sel";
                expr(*e.a);
                expr(*e.b);
                expr(*e.c);
                break;
            case Expr::Kind::Nondet:
                out_ << "nondet ";
                type(e.type);
                break;
            case Expr::Kind::Call:
                out_ << "call " << e.callee;
                for (const auto& a : e.args) expr(*a);
                break;
        }
        out_ << ")";
    }
};

}  // namespace

std::string print(const Ast& ast) {
    Printer p;
    return p.run(ast);
}

std::string fingerprint(const Ast& ast) {
    Fingerprinter f;
    return f.run(ast);
}

}  // namespace tgen::frontend
