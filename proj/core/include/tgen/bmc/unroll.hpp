#pragma once

#include <string>
#include <vector>

#include "tgen/frontend/ast.hpp"
#include "tgen/instrument/instrument.hpp"

namespace tgen::bmc {

struct UnrollError {
    std::string message;
};

// Loop-free, call-free form of the program: a single statement tree over
// flattened slots. Loops are replicated k times, each copy guarded by the
// original condition and carrying the loop's goal ids; after the k-th copy
// an unwinding assumption (an `assume(0)` tagged "__unwind") cuts deeper
// paths. Non-recursive calls are inlined with early returns turned into
// flag-guarded continuations.
struct UnrolledProgram {
    std::vector<frontend::StmtPtr> body;
    std::vector<frontend::FunctionDef::Local> locals;
};

inline constexpr int kMaxInlineDepth = 16;

UnrolledProgram unroll(const instrument::InstrumentedProgram& prog, int k);

}  // namespace tgen::bmc
