#include "tgen/instrument/instrument.hpp"

#include <sstream>

namespace tgen::instrument {

using frontend::Ast;
using frontend::FunctionDef;
using frontend::Stmt;
using frontend::StmtPtr;

const char* goal_kind_str(GoalKind k) {
    switch (k) {
        case GoalKind::ThenEdge: return "then-edge";
        case GoalKind::ElseEdge: return "else-edge";
        case GoalKind::LoopEnter: return "loop-enter";
        case GoalKind::LoopExit: return "loop-exit";
        case GoalKind::SwitchCase: return "switch-case";
        case GoalKind::SwitchDefault: return "switch-default";
        case GoalKind::ErrorCall: return "error-call";
    }
    return "?";
}

namespace {

class GoalNumberer {
public:
    GoalNumberer(CoverMode mode, std::vector<Goal>& goals) : mode_(mode), goals_(goals) {}

    void walk(std::vector<StmtPtr>& body) {
        for (auto& s : body) walk_stmt(*s);
    }

private:
    CoverMode mode_;
    std::vector<Goal>& goals_;

    int add(SrcLoc site, GoalKind kind) {
        int id = static_cast<int>(goals_.size());
        goals_.push_back({id, site, kind});
        return id;
    }

    void walk_stmt(Stmt& s) {
        switch (s.kind) {
            case Stmt::Kind::Block:
                walk(s.body);
                break;
            case Stmt::Kind::If:
                s.then_goal = add(s.loc, GoalKind::ThenEdge);
                s.else_goal = add(s.loc, GoalKind::ElseEdge);
                walk(s.body);
                walk(s.else_body);
                break;
            case Stmt::Kind::While:
            case Stmt::Kind::For:
                s.enter_goal = add(s.loc, GoalKind::LoopEnter);
                s.exit_goal = add(s.loc, GoalKind::LoopExit);
                if (s.for_init) walk_stmt(*s.for_init);
                if (s.for_step) walk_stmt(*s.for_step);
                walk(s.body);
                break;
            case Stmt::Kind::Switch: {
                bool has_default = false;
                for (auto& c : s.cases) {
                    c.goal = add(c.loc, c.match ? GoalKind::SwitchCase
                                                : GoalKind::SwitchDefault);
                    if (!c.match) has_default = true;
                }
                if (!has_default) s.default_goal = add(s.loc, GoalKind::SwitchDefault);
                for (auto& c : s.cases) walk(c.body);
                break;
            }
            case Stmt::Kind::Error:
                if (mode_ == CoverMode::Error)
                    s.error_goal = add(s.loc, GoalKind::ErrorCall);
                break;
            default:
                break;
        }
    }
};

class CfgBuilder {
public:
    Cfg build(const FunctionDef& fn) {
        cfg_ = Cfg{};
        cfg_.function = fn.name;
        cfg_.entry = new_block();
        cfg_.exit = new_block();
        int end = build_seq(fn.body, cfg_.entry);
        edge(end, cfg_.exit);
        return std::move(cfg_);
    }

private:
    Cfg cfg_;

    int new_block() {
        cfg_.blocks.emplace_back();
        return static_cast<int>(cfg_.blocks.size()) - 1;
    }
    void edge(int from, int to, int goal = -1) {
        if (from < 0) return;  // unreachable tail
        cfg_.edges.push_back({from, to, goal});
    }
    void append(int block, const Stmt* s) {
        if (block >= 0) cfg_.blocks[block].stmts.push_back(s);
    }

    // Returns the open block after the sequence, or -1 when control cannot
    // fall through.
    int build_seq(const std::vector<StmtPtr>& body, int cur) {
        for (const auto& sp : body) {
            const Stmt& s = *sp;
            switch (s.kind) {
                case Stmt::Kind::Block:
                    cur = build_seq(s.body, cur);
                    break;
                case Stmt::Kind::Decl:
                case Stmt::Kind::Assign:
                case Stmt::Kind::ExprStmt:
                case Stmt::Kind::Assume:
                    append(cur, &s);
                    break;
                case Stmt::Kind::Return:
                case Stmt::Kind::Exit:
                case Stmt::Kind::Abort:
                case Stmt::Kind::Error:
                    append(cur, &s);
                    edge(cur, cfg_.exit);
                    cur = -1;
                    break;
                case Stmt::Kind::If: {
                    append(cur, &s);
                    int then_b = new_block();
                    int else_b = new_block();
                    int join = new_block();
                    edge(cur, then_b, s.then_goal);
                    edge(cur, else_b, s.else_goal);
                    int t_end = build_seq(s.body, then_b);
                    edge(t_end, join);
                    int e_end = build_seq(s.else_body, else_b);
                    edge(e_end, join);
                    cur = join;
                    break;
                }
                case Stmt::Kind::While:
                case Stmt::Kind::For: {
                    int header = new_block();
                    edge(cur, header);
                    append(header, &s);
                    int body_b = new_block();
                    int after = new_block();
                    edge(header, body_b, s.enter_goal);
                    edge(header, after, s.exit_goal);
                    int b_end = build_seq(s.body, body_b);
                    edge(b_end, header);
                    cur = after;
                    break;
                }
                case Stmt::Kind::Switch: {
                    append(cur, &s);
                    int join = new_block();
                    bool has_default = false;
                    for (const auto& c : s.cases) {
                        int cb = new_block();
                        edge(cur, cb, c.goal);
                        int c_end = build_seq(c.body, cb);
                        edge(c_end, join);
                        if (!c.match) has_default = true;
                    }
                    if (!has_default) edge(cur, join, s.default_goal);
                    cur = join;
                    break;
                }
            }
            if (cur < 0 && &sp != &body.back()) {
                // statements after a terminator: fresh unreachable block
                cur = new_block();
            }
        }
        return cur;
    }
};

}  // namespace

std::vector<Cfg> build_cfg(const Ast& ast) {
    std::vector<Cfg> out;
    CfgBuilder b;
    out.reserve(ast.functions.size());
    for (const auto& f : ast.functions) out.push_back(b.build(f));
    return out;
}

InstrumentedProgram inject_goals(const Ast& lowered, CoverMode mode) {
    InstrumentedProgram p;
    p.ast = lowered.clone();
    p.mode = mode;
    GoalNumberer n(mode, p.goals);
    for (auto& f : p.ast.functions) n.walk(f.body);
    p.cfgs = build_cfg(p.ast);
    return p;
}

std::string dump_goals(const InstrumentedProgram& prog) {
    std::ostringstream os;
    const std::string& file =
        prog.ast.filename.empty() ? "<input>" : prog.ast.filename;
    for (const auto& g : prog.goals) {
        os << "GOAL-" << g.id << " " << file << ":" << g.site.line << ":" << g.site.col
           << " " << goal_kind_str(g.kind) << "\n";
    }
    return os.str();
}

}  // namespace tgen::instrument
