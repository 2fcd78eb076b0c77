#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace tgen {

struct SrcLoc {
    uint32_t line = 0;
    uint32_t col = 0;
    bool operator==(const SrcLoc&) const = default;
};

// Scalar type of the MiniC subset. Width 1 is reserved for _Bool; arithmetic
// types are 8/16/32/64 bits, signed or unsigned. `long` is 32 or 64 bits
// depending on the target architecture; `int` is always 32.
struct TypeDesc {
    enum class Kind : uint8_t { Bool, Signed, Unsigned };
    Kind kind = Kind::Signed;
    uint8_t width = 32;

    bool operator==(const TypeDesc&) const = default;
    bool is_bool() const { return kind == Kind::Bool; }
    bool is_signed() const { return kind == Kind::Signed; }

    static TypeDesc boolean() { return {Kind::Bool, 1}; }
    static TypeDesc s(uint8_t w) { return {Kind::Signed, w}; }
    static TypeDesc u(uint8_t w) { return {Kind::Unsigned, w}; }
    static TypeDesc int32() { return s(32); }

    std::string str() const;
};

// Raw values are stored as uint64_t masked to the type width; the upper bits
// are always zero. Signed interpretation is sign extension from the width.
inline uint64_t mask_width(uint64_t v, unsigned w) {
    return w >= 64 ? v : (v & ((uint64_t(1) << w) - 1));
}

inline int64_t sign_extend(uint64_t raw, unsigned w) {
    if (w >= 64) return static_cast<int64_t>(raw);
    uint64_t sign = uint64_t(1) << (w - 1);
    return static_cast<int64_t>((raw ^ sign) - sign);
}

// Numeric value of a raw bit pattern under its type, as a 64-bit pattern
// (sign-extended when signed). Feed the result to mask_width to convert.
inline uint64_t numeric_value(uint64_t raw, TypeDesc t) {
    return t.is_signed() ? static_cast<uint64_t>(sign_extend(raw, t.width)) : raw;
}

// Value conversion between scalar types: modular truncation/extension.
// Width-1 targets also truncate modularly (v & 1), which is the pinned
// semantics for mismatched tape values; C-style !=0 conversion to _Bool is
// a separate operation applied by the frontend where the language needs it.
inline uint64_t convert_raw(uint64_t raw, TypeDesc from, TypeDesc to) {
    return mask_width(numeric_value(raw, from), to.width);
}

enum class UnOp : uint8_t { Neg, BitNot, LogNot, Plus };

enum class BinOp : uint8_t {
    Add, Sub, Mul, Div, Rem,
    Shl, Shr,
    BitAnd, BitOr, BitXor,
    Lt, Le, Gt, Ge, Eq, Ne,
    // Short-circuit forms; removed from the AST by lowering.
    LogAnd, LogOr,
};

inline bool is_comparison(BinOp op) {
    return op == BinOp::Lt || op == BinOp::Le || op == BinOp::Gt ||
           op == BinOp::Ge || op == BinOp::Eq || op == BinOp::Ne;
}

const char* binop_spelling(BinOp op);
const char* unop_spelling(UnOp op);

struct EvalResult {
    uint64_t raw = 0;
    bool trapped = false;  // division or modulo by zero
};

// Two's-complement evaluation of a binary operator whose operands both have
// type `t` (arithmetic, bitwise, comparisons; comparisons yield 0/1). Shifts
// go through eval_shift because the operand types differ.
EvalResult eval_bin(BinOp op, TypeDesc t, uint64_t a, uint64_t b);

// Shift semantics: amounts that are negative (for signed right operands) or
// >= the left width saturate: <<, unsigned >> give 0; signed >> gives the
// sign fill. In-range signed >> is arithmetic.
uint64_t eval_shift(BinOp op, TypeDesc left, TypeDesc right, uint64_t a, uint64_t b);

uint64_t eval_un(UnOp op, TypeDesc t, uint64_t a);

// C integer promotion over the MiniC scalar set: bool and sub-int widths
// promote to signed 32-bit int; 32/64-bit types are unchanged.
TypeDesc promote(TypeDesc t);

// Usual arithmetic conversions after promotion.
TypeDesc common_type(TypeDesc a, TypeDesc b);

// Deterministic RNG used by every randomized component. Wraps the
// standardized mt19937_64 stream; all derived draws are implemented here so
// results do not depend on library distribution internals.
class Rng {
public:
    explicit Rng(uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ULL) {
        // splitmix64 warm-up to decorrelate nearby seeds
        for (int i = 0; i < 4; i++) next_();
    }
    uint64_t u64() { return next_(); }
    // uniform in [0, n); n > 0
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t r = next_();
            if (r >= threshold) return r % n;
        }
    }
    uint64_t range(uint64_t lo, uint64_t hi) { return lo + below(hi - lo + 1); }
    bool chance(uint32_t num, uint32_t den) { return below(den) < num; }

private:
    uint64_t s_;
    uint64_t next_() {
        // xorshift* variant; fixed algorithm, platform independent
        s_ ^= s_ >> 12;
        s_ ^= s_ << 25;
        s_ ^= s_ >> 27;
        return s_ * 0x2545F4914F6CDD1DULL;
    }
};

}  // namespace tgen
