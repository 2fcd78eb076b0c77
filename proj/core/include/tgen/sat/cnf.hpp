#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tgen::sat {

// DIMACS-style literal: +v / -v with v >= 1. Variable 1 is reserved by the
// bit-blaster as the constant-true variable.
using Lit = int32_t;

struct Cnf {
    int var_count = 0;
    std::vector<std::vector<Lit>> clauses;
    bool trivially_unsat = false;

    // nondet symbol index -> propositional variables, LSB first
    std::vector<std::pair<int, std::vector<int>>> bit_map;

    int new_var() { return ++var_count; }

    // Normalizes: sorts, drops duplicate literals and tautologies. An empty
    // clause marks the instance trivially unsatisfiable.
    void add_clause(std::vector<Lit> lits);

    size_t clause_count() const { return clauses.size(); }
};

struct SatResult {
    enum class Kind : uint8_t { Sat, Unsat, Unknown };
    Kind kind = Kind::Unknown;
    std::vector<bool> assignment;  // 1-indexed by variable; valid when Sat
    uint64_t conflicts = 0;

    bool sat() const { return kind == Kind::Sat; }
    bool value(int var) const { return assignment[static_cast<size_t>(var)]; }
};

struct SolverBudget {
    uint64_t max_conflicts = UINT64_MAX;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SolverConfig {
    double activity_decay = 0.95;   // per conflict
    uint64_t restart_first = 100;   // conflicts until first restart
    double restart_factor = 1.5;    // geometric growth
};

// CDCL with two-watched-literal propagation, first-UIP learning,
// activity-based branching, and geometric restarts. Sat assignments are
// checked against every clause before they are returned.
SatResult solve_cnf(const Cnf& cnf, const SolverBudget& budget = {},
                    const SolverConfig& config = {});

// Standard DIMACS serialization (p cnf V C header, 0-terminated clauses).
std::string to_dimacs(const Cnf& cnf);

bool check_assignment(const Cnf& cnf, const std::vector<bool>& assignment);

}  // namespace tgen::sat
