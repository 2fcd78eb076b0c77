#pragma once

#include <string>
#include <vector>

#include "tgen/types.hpp"

namespace tgen::frontend {

struct Diagnostic {
    enum class Severity : uint8_t { Error, Warning };
    enum class Code : uint8_t { SyntaxError, TypeError, UnsupportedFeature };

    Severity severity = Severity::Error;
    Code code = Code::SyntaxError;
    SrcLoc loc;
    std::string message;

    std::string str() const;
};

using Diagnostics = std::vector<Diagnostic>;

inline bool has_errors(const Diagnostics& ds) {
    for (const auto& d : ds)
        if (d.severity == Diagnostic::Severity::Error) return true;
    return false;
}

}  // namespace tgen::frontend
