#include "tgen/interp/interp.hpp"

#include <sstream>

namespace tgen::interp {

using frontend::Expr;
using frontend::FunctionDef;
using frontend::Stmt;
using frontend::StmtPtr;
using instrument::GoalKind;
using instrument::InstrumentedProgram;

namespace {

constexpr size_t kDecisionCap = 1u << 16;
constexpr int kMaxCallDepth = 200;

struct Halt {
    RunStatus status;
    int64_t code = 0;
};

struct Frame {
    std::vector<uint64_t> scalars;
    std::vector<std::vector<uint64_t>> arrays;
};

class Machine {
public:
    Machine(const InstrumentedProgram& prog, TapeSource& src, uint64_t step_limit)
        : prog_(prog), src_(src), step_limit_(step_limit) {
        hit_.assign(prog.goals.size(), false);
    }

    Trace run() {
        const FunctionDef* entry = prog_.ast.find(prog_.ast.entry);
        try {
            if (!entry) throw Halt{RunStatus::Exited, 0};
            std::optional<uint64_t> r = call(*entry, {});
            trace_.status = RunStatus::Exited;
            trace_.exit_code =
                r && entry->return_type ? sign_extend(*r, entry->return_type->width) : 0;
        } catch (const Halt& h) {
            trace_.status = h.status;
            trace_.exit_code = h.code;
        }
        trace_.steps = steps_;
        return std::move(trace_);
    }

private:
    const InstrumentedProgram& prog_;
    TapeSource& src_;
    uint64_t step_limit_;
    uint64_t steps_ = 0;
    size_t events_ = 0;
    int depth_ = 0;
    Trace trace_;
    std::vector<bool> hit_;

    void step() {
        if (++steps_ > step_limit_) throw Halt{RunStatus::StepLimit};
    }

    void hit_goal(int goal) {
        if (goal < 0 || goal >= static_cast<int>(hit_.size())) return;
        if (!hit_[goal]) {
            hit_[goal] = true;
            trace_.goals_hit.push_back(goal);
        }
    }

    void record_decision(SrcLoc loc, GoalKind edge, int goal) {
        hit_goal(goal);
        if (trace_.decisions.size() >= kDecisionCap) {
            trace_.decisions_truncated = true;
            return;
        }
        trace_.decisions.push_back({loc, edge, goal});
        trace_.decision_seq.push_back(events_++);
    }

    enum class Flow { Normal, Returned };

    std::optional<uint64_t> call(const FunctionDef& fn, std::vector<uint64_t> args) {
        if (++depth_ > kMaxCallDepth) throw Halt{RunStatus::Trap};
        Frame frame;
        frame.scalars.assign(fn.locals.size(), 0);
        frame.arrays.resize(fn.locals.size());
        for (size_t i = 0; i < fn.locals.size(); i++)
            if (fn.locals[i].array_size)
                frame.arrays[i].assign(*fn.locals[i].array_size, 0);
        for (size_t i = 0; i < args.size() && i < fn.params.size(); i++)
            frame.scalars[i] = args[i];

        ret_.reset();
        Flow f = exec_block(fn.body, frame);
        std::optional<uint64_t> result;
        if (f == Flow::Returned) result = ret_;
        if (!result && fn.return_type) result = 0;  // fell off the end
        depth_--;
        return result;
    }

    std::optional<uint64_t> ret_;

    Flow exec_block(const std::vector<StmtPtr>& body, Frame& fr) {
        for (const auto& s : body) {
            Flow f = exec_stmt(*s, fr);
            if (f == Flow::Returned) return f;
        }
        return Flow::Normal;
    }

    bool truthy(const Expr& e, Frame& fr) { return eval(e, fr) != 0; }

    Flow exec_stmt(const Stmt& s, Frame& fr) {
        step();
        switch (s.kind) {
            case Stmt::Kind::Block:
                return exec_block(s.body, fr);
            case Stmt::Kind::Decl: {
                if (s.array_size) {
                    fr.arrays[s.slot].assign(*s.array_size, 0);
                } else {
                    fr.scalars[s.slot] = s.value ? eval(*s.value, fr) : 0;
                }
                return Flow::Normal;
            }
            case Stmt::Kind::Assign: {
                if (s.index) {
                    uint64_t idx_raw = eval(*s.index, fr);
                    int64_t idx = static_cast<int64_t>(numeric_value(idx_raw, s.index->type));
                    uint64_t v = eval(*s.value, fr);
                    auto& arr = fr.arrays[s.slot];
                    if (idx >= 0 && static_cast<uint64_t>(idx) < arr.size())
                        arr[static_cast<size_t>(idx)] = v;
                    // out-of-bounds writes are dropped (pinned total semantics)
                } else {
                    fr.scalars[s.slot] = eval(*s.value, fr);
                }
                return Flow::Normal;
            }
            case Stmt::Kind::If: {
                bool c = truthy(*s.cond, fr);
                record_decision(s.loc, c ? GoalKind::ThenEdge : GoalKind::ElseEdge,
                                c ? s.then_goal : s.else_goal);
                return exec_block(c ? s.body : s.else_body, fr);
            }
            case Stmt::Kind::While: {
                for (;;) {
                    step();
                    bool c = truthy(*s.cond, fr);
                    record_decision(s.loc, c ? GoalKind::LoopEnter : GoalKind::LoopExit,
                                    c ? s.enter_goal : s.exit_goal);
                    if (!c) return Flow::Normal;
                    Flow f = exec_block(s.body, fr);
                    if (f == Flow::Returned) return f;
                }
            }
            case Stmt::Kind::For: {
                // executed only for unlowered programs (tests)
                if (s.for_init) {
                    Flow f = exec_stmt(*s.for_init, fr);
                    if (f == Flow::Returned) return f;
                }
                for (;;) {
                    step();
                    bool c = s.cond ? truthy(*s.cond, fr) : true;
                    record_decision(s.loc, c ? GoalKind::LoopEnter : GoalKind::LoopExit,
                                    c ? s.enter_goal : s.exit_goal);
                    if (!c) return Flow::Normal;
                    Flow f = exec_block(s.body, fr);
                    if (f == Flow::Returned) return f;
                    if (s.for_step) {
                        f = exec_stmt(*s.for_step, fr);
                        if (f == Flow::Returned) return f;
                    }
                }
            }
            case Stmt::Kind::Switch: {
                uint64_t v = eval(*s.cond, fr);
                const frontend::SwitchCase* chosen = nullptr;
                const frontend::SwitchCase* dflt = nullptr;
                for (const auto& c : s.cases) {
                    if (!c.match) {
                        dflt = &c;
                        continue;
                    }
                    if (mask_width(*c.match, s.cond->type.width) == v) {
                        chosen = &c;
                        break;
                    }
                }
                if (chosen) {
                    record_decision(chosen->loc, GoalKind::SwitchCase, chosen->goal);
                    return exec_block(chosen->body, fr);
                }
                if (dflt) {
                    record_decision(dflt->loc, GoalKind::SwitchDefault, dflt->goal);
                    return exec_block(dflt->body, fr);
                }
                record_decision(s.loc, GoalKind::SwitchDefault, s.default_goal);
                return Flow::Normal;
            }
            case Stmt::Kind::Return:
                ret_ = s.value ? std::optional<uint64_t>(eval(*s.value, fr)) : std::nullopt;
                return Flow::Returned;
            case Stmt::Kind::ExprStmt:
                eval_any(*s.value, fr);
                return Flow::Normal;
            case Stmt::Kind::Assume:
                if (!truthy(*s.cond, fr)) throw Halt{RunStatus::Exited, 0};
                return Flow::Normal;
            case Stmt::Kind::Error:
                hit_goal(s.error_goal);
                trace_.error_reached = true;
                throw Halt{RunStatus::Error, 1};
            case Stmt::Kind::Exit:
                throw Halt{RunStatus::Exited, sign_extend(eval(*s.value, fr), 32)};
            case Stmt::Kind::Abort:
                throw Halt{RunStatus::Exited, 134};
        }
        return Flow::Normal;
    }

    // Evaluation that tolerates void calls (statement position).
    void eval_any(const Expr& e, Frame& fr) {
        if (e.kind == Expr::Kind::Call) {
            const FunctionDef& callee = prog_.ast.functions[e.callee];
            std::vector<uint64_t> args;
            args.reserve(e.args.size());
            for (const auto& a : e.args) args.push_back(eval(*a, fr));
            call(callee, std::move(args));
            return;
        }
        eval(e, fr);
    }

    uint64_t eval(const Expr& e, Frame& fr) {
        switch (e.kind) {
            case Expr::Kind::IntLit:
                return e.value;
            case Expr::Kind::Var:
                return fr.scalars[e.slot];
            case Expr::Kind::Index: {
                uint64_t idx_raw = eval(*e.b, fr);
                int64_t idx = static_cast<int64_t>(numeric_value(idx_raw, e.b->type));
                const auto& arr = fr.arrays[e.a->slot];
                if (idx >= 0 && static_cast<uint64_t>(idx) < arr.size())
                    return arr[static_cast<size_t>(idx)];
                return 0;  // out-of-bounds reads yield 0
            }
            case Expr::Kind::Unary:
                return eval_un(e.uop, e.a->type, eval(*e.a, fr));
            case Expr::Kind::Binary: {
                if (e.bop == BinOp::LogAnd) {
                    if (!truthy(*e.a, fr)) return 0;
                    return truthy(*e.b, fr) ? 1 : 0;
                }
                if (e.bop == BinOp::LogOr) {
                    if (truthy(*e.a, fr)) return 1;
                    return truthy(*e.b, fr) ? 1 : 0;
                }
                uint64_t a = eval(*e.a, fr);
                uint64_t b = eval(*e.b, fr);
                if (e.bop == BinOp::Shl || e.bop == BinOp::Shr)
                    return eval_shift(e.bop, e.a->type, e.b->type, a, b);
                EvalResult r = eval_bin(e.bop, e.a->type, a, b);
                if (r.trapped) throw Halt{RunStatus::Trap};
                return r.raw;
            }
            case Expr::Kind::Cast:
                return convert_raw(eval(*e.a, fr), e.a->type, e.type);
            case Expr::Kind::BoolCast:
                return eval(*e.a, fr) != 0 ? 1 : 0;
            case Expr::Kind::Ternary:
                return truthy(*e.a, fr) ? eval(*e.b, fr) : eval(*e.c, fr);
            case Expr::Kind::Nondet: {
                std::optional<uint64_t> v = src_.next(e.type);
                if (!v) {
                    trace_.exhausted_want = e.type;
                    throw Halt{RunStatus::TapeExhausted};
                }
                ReadEvent ev;
                ev.loc = e.loc;
                ev.type = e.type;
                ev.raw = *v;
                ev.seq = events_++;
                trace_.reads.push_back(ev);
                return *v;
            }
            case Expr::Kind::Call: {
                const FunctionDef& callee = prog_.ast.functions[e.callee];
                std::vector<uint64_t> args;
                args.reserve(e.args.size());
                for (const auto& a : e.args) args.push_back(eval(*a, fr));
                std::optional<uint64_t> r = call(callee, std::move(args));
                return r.value_or(0);
            }
        }
        return 0;
    }
};

}  // namespace

const char* run_status_str(RunStatus s) {
    switch (s) {
        case RunStatus::Exited: return "exited";
        case RunStatus::Error: return "error";
        case RunStatus::TapeExhausted: return "tape-exhausted";
        case RunStatus::StepLimit: return "step-limit";
        case RunStatus::Trap: return "trap";
    }
    return "?";
}

std::string Trace::str() const {
    std::ostringstream os;
    os << "status: " << run_status_str(status);
    if (status == RunStatus::Exited) os << "(" << exit_code << ")";
    os << "\nerror_reached: " << (error_reached ? "true" : "false");
    os << "\ninputs_consumed: " << reads.size();
    for (const auto& r : reads)
        os << "\n  read " << r.type.str() << " = " << numeric_value(r.raw, r.type) << " at "
           << r.loc.line << ":" << r.loc.col;
    os << "\ngoals_hit:";
    for (int g : goals_hit) os << " GOAL-" << g;
    os << "\ndecisions: " << decisions.size() << (decisions_truncated ? " (truncated)" : "");
    for (const auto& d : decisions)
        os << "\n  " << d.loc.line << ":" << d.loc.col << " "
           << instrument::goal_kind_str(d.edge)
           << (d.goal >= 0 ? " GOAL-" + std::to_string(d.goal) : "");
    os << "\nsteps: " << steps << "\n";
    return os.str();
}

Trace execute(const InstrumentedProgram& prog, TapeSource& source, uint64_t step_limit) {
    Machine m(prog, source, step_limit);
    return m.run();
}

Trace execute(const InstrumentedProgram& prog, const InputTape& tape, uint64_t step_limit) {
    TypedTapeSource src(tape);
    return execute(prog, src, step_limit);
}

std::set<int> count_reachable_goals_exhaustive(const InstrumentedProgram& prog,
                                               unsigned input_bit_budget,
                                               uint64_t step_limit) {
    std::set<int> reachable;
    std::vector<std::pair<InputTape, unsigned>> work;  // (tape prefix, bits used)
    work.push_back({InputTape{}, 0});
    while (!work.empty()) {
        auto [tape, bits] = std::move(work.back());
        work.pop_back();
        Trace t = execute(prog, tape, step_limit);
        for (int g : t.goals_hit) reachable.insert(g);
        if (t.status == RunStatus::TapeExhausted) {
            TypeDesc want = *t.exhausted_want;
            if (bits + want.width > input_bit_budget)
                throw OracleBudgetExceeded{want, bits + want.width};
            uint64_t count = uint64_t(1) << want.width;
            for (uint64_t v = 0; v < count; v++) {
                InputTape next = tape;
                next.push(want, v);
                work.push_back({std::move(next), bits + want.width});
            }
        }
    }
    return reachable;
}

}  // namespace tgen::interp
