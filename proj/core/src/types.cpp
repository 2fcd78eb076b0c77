#include "tgen/types.hpp"

namespace tgen {

std::string TypeDesc::str() const {
    if (is_bool()) return "_Bool";
    std::string base;
    switch (width) {
        case 8: base = "char"; break;
        case 16: base = "short"; break;
        case 32: base = "int"; break;
        default: base = "long long"; break;
    }
    if (kind == Kind::Unsigned) return "unsigned " + base;
    return base;
}

const char* binop_spelling(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::Rem: return "%";
        case BinOp::Shl: return "<<";
        case BinOp::Shr: return ">>";
        case BinOp::BitAnd: return "&";
        case BinOp::BitOr: return "|";
        case BinOp::BitXor: return "^";
        case BinOp::Lt: return "<";
        case BinOp::Le: return "<=";
        case BinOp::Gt: return ">";
        case BinOp::Ge: return ">=";
        case BinOp::Eq: return "==";
        case BinOp::Ne: return "!=";
        case BinOp::LogAnd: return "&&";
        case BinOp::LogOr: return "||";
    }
    return "?";
}

const char* unop_spelling(UnOp op) {
    switch (op) {
        case UnOp::Neg: return "-";
        case UnOp::BitNot: return "~";
        case UnOp::LogNot: return "!";
        case UnOp::Plus: return "+";
    }
    return "?";
}

EvalResult eval_bin(BinOp op, TypeDesc t, uint64_t a, uint64_t b) {
    const unsigned w = t.width;
    const bool sgn = t.is_signed();
    auto wrap = [w](uint64_t v) { return mask_width(v, w); };
    switch (op) {
        case BinOp::Add: return {wrap(a + b)};
        case BinOp::Sub: return {wrap(a - b)};
        case BinOp::Mul: return {wrap(a * b)};
        case BinOp::Div: {
            if (b == 0) return {0, true};
            if (sgn) {
                int64_t sa = sign_extend(a, w), sb = sign_extend(b, w);
                if (sb == -1) return {wrap(0 - static_cast<uint64_t>(sa))};
                return {wrap(static_cast<uint64_t>(sa / sb))};
            }
            return {wrap(a / b)};
        }
        case BinOp::Rem: {
            if (b == 0) return {0, true};
            if (sgn) {
                int64_t sa = sign_extend(a, w), sb = sign_extend(b, w);
                if (sb == -1) return {0};
                return {wrap(static_cast<uint64_t>(sa % sb))};
            }
            return {wrap(a % b)};
        }
        case BinOp::BitAnd: return {a & b};
        case BinOp::BitOr: return {a | b};
        case BinOp::BitXor: return {a ^ b};
        case BinOp::Lt:
            return {uint64_t((sgn ? sign_extend(a, w) < sign_extend(b, w) : a < b) ? 1 : 0)};
        case BinOp::Le:
            return {uint64_t((sgn ? sign_extend(a, w) <= sign_extend(b, w) : a <= b) ? 1 : 0)};
        case BinOp::Gt:
            return {uint64_t((sgn ? sign_extend(a, w) > sign_extend(b, w) : a > b) ? 1 : 0)};
        case BinOp::Ge:
            return {uint64_t((sgn ? sign_extend(a, w) >= sign_extend(b, w) : a >= b) ? 1 : 0)};
        case BinOp::Eq: return {uint64_t(a == b ? 1 : 0)};
        case BinOp::Ne: return {uint64_t(a != b ? 1 : 0)};
        default: return {0};
    }
}

uint64_t eval_shift(BinOp op, TypeDesc left, TypeDesc right, uint64_t a, uint64_t b) {
    const unsigned w = left.width;
    bool oor;  // out of range: negative or >= width
    uint64_t amount = 0;
    if (right.is_signed()) {
        int64_t sb = sign_extend(b, right.width);
        oor = sb < 0 || static_cast<uint64_t>(sb) >= w;
        if (!oor) amount = static_cast<uint64_t>(sb);
    } else {
        oor = b >= w;
        if (!oor) amount = b;
    }
    bool neg = left.is_signed() && sign_extend(a, w) < 0;
    if (op == BinOp::Shl) {
        return oor ? 0 : mask_width(a << amount, w);
    }
    // Shr
    if (oor) return neg ? mask_width(~uint64_t(0), w) : 0;
    if (left.is_signed())
        return mask_width(static_cast<uint64_t>(sign_extend(a, w) >> amount), w);
    return a >> amount;
}

uint64_t eval_un(UnOp op, TypeDesc t, uint64_t a) {
    switch (op) {
        case UnOp::Neg: return mask_width(0 - a, t.width);
        case UnOp::BitNot: return mask_width(~a, t.width);
        case UnOp::LogNot: return a == 0 ? 1 : 0;
        case UnOp::Plus: return a;
    }
    return 0;
}

TypeDesc promote(TypeDesc t) {
    if (t.is_bool() || t.width < 32) return TypeDesc::int32();
    return t;
}

TypeDesc common_type(TypeDesc a0, TypeDesc b0) {
    TypeDesc a = promote(a0), b = promote(b0);
    if (a == b) return a;
    if (a.kind == b.kind) return a.width >= b.width ? a : b;
    TypeDesc u = a.kind == TypeDesc::Kind::Unsigned ? a : b;
    TypeDesc s = a.kind == TypeDesc::Kind::Unsigned ? b : a;
    if (u.width >= s.width) return u;
    return s;  // wider signed type represents all values of the narrower unsigned
}

}  // namespace tgen
