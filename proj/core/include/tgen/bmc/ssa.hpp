#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "tgen/tape.hpp"
#include "tgen/types.hpp"

namespace tgen::bmc {

using TermId = uint32_t;

// Bit-vector term language. Fixed widths 1..64; comparison results have
// width 1. Division and remainder are total with SMT-LIB semantics for zero
// divisors; the encoder separately adds the divisor!=0 path constraint, so
// the zero case is never observable on a feasible path. Shift amounts are
// unsigned; amounts >= width give 0 (shl, lshr) or sign fill (ashr).
enum class TermKind : uint8_t {
    Const, Sym,
    Not, And, Or, Xor,
    Add, Sub, Mul,
    UDiv, SDiv, URem, SRem,
    Shl, LShr, AShr,
    Eq, Ult, Ule, Slt, Sle,
    Ite,
    ZExt, SExt, Trunc,
};

struct Term {
    TermKind kind;
    uint8_t width;
    TermId a = 0, b = 0, c = 0;
    uint64_t cval = 0;  // Const: value; Sym: symbol index

    bool operator==(const Term&) const = default;
};

class TermArena {
public:
    TermArena();

    TermId konst(unsigned width, uint64_t value);
    TermId sym(uint32_t index, unsigned width);
    TermId mk(TermKind kind, unsigned width, TermId a, TermId b = 0, TermId c = 0);

    const Term& at(TermId id) const { return terms_[id]; }
    size_t size() const { return terms_.size(); }

    TermId true_term() const { return true_; }
    TermId false_term() const { return false_; }
    bool is_const(TermId id) const { return terms_[id].kind == TermKind::Const; }
    bool is_true(TermId id) const { return id == true_; }
    bool is_false(TermId id) const { return id == false_; }

    // Boolean helpers with structural shortcuts on constants; these keep the
    // encoding small but perform no arithmetic rewriting (that is the
    // constant-folding pass's job).
    TermId b_and(TermId a, TermId b);
    TermId b_or(TermId a, TermId b);
    TermId b_not(TermId a);
    TermId b_ite(TermId c, TermId a, TermId b);

    // Post-order traversal of all terms reachable from `roots`.
    template <typename Fn>
    void for_each_reachable(const std::vector<TermId>& roots, Fn&& fn) const {
        std::vector<uint8_t> state(terms_.size(), 0);
        std::vector<TermId> stack;
        for (TermId r : roots) stack.push_back(r);
        while (!stack.empty()) {
            TermId id = stack.back();
            if (state[id] == 2) {
                stack.pop_back();
                continue;
            }
            if (state[id] == 1) {
                state[id] = 2;
                stack.pop_back();
                fn(id);
                continue;
            }
            state[id] = 1;
            const Term& t = terms_[id];
            if (has_a(t.kind)) {
                if (state[t.a] == 0) stack.push_back(t.a);
                if (has_b(t.kind) && state[t.b] == 0) stack.push_back(t.b);
                if (has_c(t.kind) && state[t.c] == 0) stack.push_back(t.c);
            }
        }
    }

    static bool has_a(TermKind k) { return k != TermKind::Const && k != TermKind::Sym; }
    static bool has_b(TermKind k) {
        return has_a(k) && k != TermKind::Not && k != TermKind::ZExt &&
               k != TermKind::SExt && k != TermKind::Trunc;
    }
    static bool has_c(TermKind k) { return k == TermKind::Ite; }

private:
    std::vector<Term> terms_;
    std::unordered_map<uint64_t, std::vector<TermId>> buckets_;  // structural hashing
    TermId true_ = 0, false_ = 0;

    TermId intern(const Term& t);
};

// Concrete evaluation of a term under an assignment to all nondet symbols
// (indexed by symbol index). Iterative; memoizes over the arena.
uint64_t eval_term(const TermArena& arena, TermId root,
                   const std::vector<uint64_t>& sym_values);

struct NondetSym {
    TermId term = 0;    // the Sym node
    TypeDesc type;
    TermId guard = 0;   // liveness condition of the consuming read
    uint32_t seq = 0;   // event position in the unrolled program
    bool sliced = false;
};

struct GoalInstance {
    int goal = -1;
    TermId cond = 0;  // liveness of this edge instance
    uint32_t seq = 0;
};

// Loop-free single-assignment constraint system. Symbols appear in
// consumption order of the unrolled program; each goal's target is the
// disjunction of its edge-instance conditions.
struct SsaFormula {
    TermArena arena;
    std::vector<NondetSym> symbols;
    std::vector<GoalInstance> instances;
    std::map<int, TermId> targets;             // goal id -> condition
    std::vector<TermId> unwind_violations;     // per-loop bound-hit conditions
    std::map<int, bool> target_folded_unsat;   // set by constant folding

    size_t def_count() const { return arena.size(); }
    bool has_target(int goal) const { return targets.count(goal) != 0; }
};

// Builds the model's input tape: evaluates every symbol guard under the
// assignment, keeps consumed positions in order, and truncates after the
// last read the goal's earliest satisfied instance can observe. Returns
// false if no instance of the goal is satisfied by the assignment.
bool model_to_tape(const SsaFormula& f, int goal, const std::vector<uint64_t>& sym_values,
                   InputTape& out);

}  // namespace tgen::bmc
