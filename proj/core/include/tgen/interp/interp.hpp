#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tgen/instrument/instrument.hpp"
#include "tgen/tape.hpp"

namespace tgen::interp {

inline constexpr uint64_t kDefaultStepLimit = 10'000'000;

enum class RunStatus : uint8_t { Exited, Error, TapeExhausted, StepLimit, Trap };

const char* run_status_str(RunStatus s);

struct DecisionEvent {
    SrcLoc loc;
    instrument::GoalKind edge;
    int goal = -1;  // -1 on uninstrumented decisions
};

struct ReadEvent {
    SrcLoc loc;
    TypeDesc type;
    uint64_t raw = 0;
    bool before_decision = true;  // ordering helper for witness emission
    size_t seq = 0;               // global event sequence number
};

struct Trace {
    std::vector<int> goals_hit;  // first-hit order, each goal once
    bool error_reached = false;
    RunStatus status = RunStatus::Exited;
    int64_t exit_code = 0;
    std::optional<TypeDesc> exhausted_want;  // set when status == TapeExhausted
    std::vector<DecisionEvent> decisions;    // every decision taken, capped
    std::vector<size_t> decision_seq;        // event sequence per decision
    bool decisions_truncated = false;
    std::vector<ReadEvent> reads;
    uint64_t steps = 0;

    size_t inputs_consumed() const { return reads.size(); }
    bool hit(int goal) const {
        for (int g : goals_hit)
            if (g == goal) return true;
        return false;
    }
    std::string str() const;
};

// Abstract supplier of nondet values.
class TapeSource {
public:
    virtual ~TapeSource() = default;
    virtual std::optional<uint64_t> next(TypeDesc want) = 0;
};

class TypedTapeSource final : public TapeSource {
public:
    explicit TypedTapeSource(const InputTape& tape) : tape_(tape) {}
    std::optional<uint64_t> next(TypeDesc want) override {
        if (pos_ >= tape_.values.size()) return std::nullopt;
        const TapeValue& v = tape_.values[pos_++];
        return convert_raw(v.raw, v.type, want);
    }

private:
    const InputTape& tape_;
    size_t pos_ = 0;
};

class UntypedTapeSource final : public TapeSource {
public:
    explicit UntypedTapeSource(const UntypedTape& tape) : tape_(tape) {}
    std::optional<uint64_t> next(TypeDesc want) override {
        if (pos_ >= tape_.values.size()) return std::nullopt;
        return decimal_to_raw(tape_.values[pos_++], want);
    }

private:
    const UntypedTape& tape_;
    size_t pos_ = 0;
};

// Deterministic concrete execution of an instrumented program against an
// input tape. Division or modulo by zero traps (not an error); assume(false)
// exits cleanly; reach_error halts with error_reached set.
Trace execute(const instrument::InstrumentedProgram& prog, TapeSource& source,
              uint64_t step_limit = kDefaultStepLimit);

Trace execute(const instrument::InstrumentedProgram& prog, const InputTape& tape,
              uint64_t step_limit = kDefaultStepLimit);

// Exhaustive reachability oracle: enumerates every input tape whose total
// nondet width stays within `input_bit_budget` bits (<= 16) and returns the
// exact set of reachable goal ids.
struct OracleBudgetExceeded {
    TypeDesc want;
    unsigned bits_needed = 0;
};

std::set<int> count_reachable_goals_exhaustive(const instrument::InstrumentedProgram& prog,
                                               unsigned input_bit_budget,
                                               uint64_t step_limit = 200'000);

}  // namespace tgen::interp
