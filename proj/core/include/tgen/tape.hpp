#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tgen/types.hpp"

namespace tgen {

// One nondet input: the type it was generated at plus its raw bits. When a
// consumer asks for a different type the value converts by modular
// truncation/extension.
struct TapeValue {
    TypeDesc type;
    uint64_t raw = 0;

    bool operator==(const TapeValue&) const = default;
};

struct InputTape {
    std::vector<TapeValue> values;

    bool operator==(const InputTape&) const = default;
    size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    void push(TypeDesc t, uint64_t raw) { values.push_back({t, mask_width(raw, t.width)}); }
};

// Engine that produced a test; determines credit in the coverage report.
enum class Engine : uint8_t { Fuzz, Bmc, Selective, External };

const char* engine_str(Engine e);

// A replay-validated candidate test and the goals it first hit when it was
// produced. The orchestrator revalidates before crediting.
struct GeneratedTest {
    InputTape tape;
    std::vector<int> claimed_goals;
    Engine engine = Engine::Fuzz;
    bool covers_error = false;
};

// Values parsed from a testcase XML file: decimal strings, typed only at
// replay when the consuming nondet call announces its type.
struct UntypedTape {
    std::vector<std::string> values;
};

// Decimal string (optionally signed) to raw bits of `want`, wrapping mod 2^w.
uint64_t decimal_to_raw(const std::string& text, TypeDesc want);

}  // namespace tgen
