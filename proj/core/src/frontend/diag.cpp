#include "tgen/frontend/diag.hpp"

#include <sstream>

namespace tgen::frontend {

std::string Diagnostic::str() const {
    std::ostringstream os;
    os << loc.line << ":" << loc.col << ": "
       << (severity == Severity::Error ? "error" : "warning") << ": ";
    switch (code) {
        case Code::SyntaxError: os << "[syntax] "; break;
        case Code::TypeError: os << "[type] "; break;
        case Code::UnsupportedFeature: os << "[unsupported] "; break;
    }
    os << message;
    return os.str();
}

}  // namespace tgen::frontend
