#pragma once

#include <string>
#include <vector>

#include "tgen/frontend/ast.hpp"

namespace tgen::instrument {

enum class CoverMode : uint8_t { Error, Branches };

enum class GoalKind : uint8_t {
    ThenEdge,
    ElseEdge,
    LoopEnter,
    LoopExit,
    SwitchCase,
    SwitchDefault,
    ErrorCall,
};

const char* goal_kind_str(GoalKind k);

struct Goal {
    int id = -1;
    SrcLoc site;
    GoalKind kind = GoalKind::ThenEdge;
};

// Basic-block view of one function. Blocks reference statements of the
// instrumented Ast; decision edges carry the goal injected on them.
struct CfgEdge {
    int from = -1;
    int to = -1;
    int goal = -1;  // -1: plain control edge
};

struct CfgBlock {
    std::vector<const frontend::Stmt*> stmts;
};

struct Cfg {
    std::string function;
    std::vector<CfgBlock> blocks;
    std::vector<CfgEdge> edges;
    int entry = 0;
    int exit = 0;

    size_t decision_edge_count() const {
        size_t n = 0;
        for (const auto& e : edges)
            if (e.goal >= 0) n++;
        return n;
    }
};

struct InstrumentedProgram {
    frontend::Ast ast;  // clone with goal ids written into decision nodes
    std::vector<Cfg> cfgs;
    std::vector<Goal> goals;
    CoverMode mode = CoverMode::Branches;

    int goal_count() const { return static_cast<int>(goals.size()); }
};

// Builds one Cfg per function of a lowered Ast (goal fields may be unset).
std::vector<Cfg> build_cfg(const frontend::Ast& ast);

// Numbers coverage goals in deterministic preorder (function order, then
// statement order, then-edge before else-edge, switch cases in source order)
// and, in Cover-Error mode, adds an error-call goal per reach_error site.
InstrumentedProgram inject_goals(const frontend::Ast& lowered, CoverMode mode);

// `GOAL-<N> <file>:<line>:<col> <kind>` per line.
std::string dump_goals(const InstrumentedProgram& prog);

}  // namespace tgen::instrument
