#pragma once

#include <string>

#include "tgen/frontend/ast.hpp"

namespace tgen::frontend {

// Renders an Ast back to MiniC source. The output reparses to a structurally
// identical Ast (same fingerprint).
std::string print(const Ast& ast);

// Canonical structural fingerprint: ignores source locations, synthetic and
// implicit-conversion markers, and goal annotations. Two Asts with equal
// fingerprints behave identically under every engine.
std::string fingerprint(const Ast& ast);

}  // namespace tgen::frontend
