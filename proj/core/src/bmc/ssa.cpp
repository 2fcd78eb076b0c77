#include "tgen/bmc/ssa.hpp"

namespace tgen::bmc {

TermArena::TermArena() {
    true_ = konst(1, 1);
    false_ = konst(1, 0);
}

TermId TermArena::intern(const Term& t) {
    uint64_t h = (uint64_t(t.kind) << 56) ^ (uint64_t(t.width) << 48) ^
                 (uint64_t(t.a) * 0x9E3779B97F4A7C15ULL) ^
                 (uint64_t(t.b) * 0xC2B2AE3D27D4EB4FULL) ^
                 (uint64_t(t.c) * 0x165667B19E3779F9ULL) ^ t.cval;
    auto& bucket = buckets_[h];
    for (TermId id : bucket)
        if (terms_[id] == t) return id;
    TermId id = static_cast<TermId>(terms_.size());
    terms_.push_back(t);
    bucket.push_back(id);
    return id;
}

TermId TermArena::konst(unsigned width, uint64_t value) {
    Term t;
    t.kind = TermKind::Const;
    t.width = static_cast<uint8_t>(width);
    t.cval = mask_width(value, width);
    return intern(t);
}

TermId TermArena::sym(uint32_t index, unsigned width) {
    Term t;
    t.kind = TermKind::Sym;
    t.width = static_cast<uint8_t>(width);
    t.cval = index;
    return intern(t);
}

TermId TermArena::mk(TermKind kind, unsigned width, TermId a, TermId b, TermId c) {
    Term t;
    t.kind = kind;
    t.width = static_cast<uint8_t>(width);
    t.a = a;
    t.b = b;
    t.c = c;
    return intern(t);
}

TermId TermArena::b_and(TermId a, TermId b) {
    if (is_true(a)) return b;
    if (is_true(b)) return a;
    if (is_false(a) || is_false(b)) return false_;
    if (a == b) return a;
    return mk(TermKind::And, 1, a, b);
}

TermId TermArena::b_or(TermId a, TermId b) {
    if (is_false(a)) return b;
    if (is_false(b)) return a;
    if (is_true(a) || is_true(b)) return true_;
    if (a == b) return a;
    return mk(TermKind::Or, 1, a, b);
}

TermId TermArena::b_not(TermId a) {
    if (is_true(a)) return false_;
    if (is_false(a)) return true_;
    return mk(TermKind::Not, 1, a);
}

TermId TermArena::b_ite(TermId c, TermId a, TermId b) {
    if (is_true(c)) return a;
    if (is_false(c)) return b;
    if (a == b) return a;
    return mk(TermKind::Ite, at(a).width, c, a, b);
}

namespace {

// Kinds whose result depends only on (width, operand bits); comparisons,
// ite, and extensions need operand widths and are handled by the caller.
uint64_t eval_node(const Term& t, uint64_t a, uint64_t b) {
    const unsigned w = t.width;
    const TypeDesc st = TypeDesc::s(static_cast<uint8_t>(w));
    const TypeDesc ut = TypeDesc::u(static_cast<uint8_t>(w));
    switch (t.kind) {
        case TermKind::Const: return t.cval;
        case TermKind::Not: return mask_width(~a, w);
        case TermKind::And: return a & b;
        case TermKind::Or: return a | b;
        case TermKind::Xor: return a ^ b;
        case TermKind::Add: return mask_width(a + b, w);
        case TermKind::Sub: return mask_width(a - b, w);
        case TermKind::Mul: return mask_width(a * b, w);
        case TermKind::UDiv:
            return b == 0 ? mask_width(~0ULL, w) : eval_bin(BinOp::Div, ut, a, b).raw;
        case TermKind::SDiv:
            if (b == 0) return sign_extend(a, w) < 0 ? 1 : mask_width(~0ULL, w);
            return eval_bin(BinOp::Div, st, a, b).raw;
        case TermKind::URem: return b == 0 ? a : eval_bin(BinOp::Rem, ut, a, b).raw;
        case TermKind::SRem: return b == 0 ? a : eval_bin(BinOp::Rem, st, a, b).raw;
        case TermKind::Shl: return b >= w ? 0 : mask_width(a << b, w);
        case TermKind::LShr: return b >= w ? 0 : a >> b;
        case TermKind::AShr: {
            uint64_t amt = b >= w ? w - 1 : b;
            return mask_width(static_cast<uint64_t>(sign_extend(a, w) >> amt), w);
        }
        default: return 0;
    }
}

}  // namespace

uint64_t eval_term(const TermArena& arena, TermId root, const std::vector<uint64_t>& sym_values) {
    std::vector<uint64_t> memo(arena.size(), 0);
    std::vector<uint8_t> done(arena.size(), 0);
    std::vector<TermId> stack{root};
    while (!stack.empty()) {
        TermId id = stack.back();
        if (done[id]) {
            stack.pop_back();
            continue;
        }
        const Term& t = arena.at(id);
        bool ready = true;
        if (TermArena::has_a(t.kind) && !done[t.a]) {
            stack.push_back(t.a);
            ready = false;
        }
        if (TermArena::has_b(t.kind) && !done[t.b]) {
            stack.push_back(t.b);
            ready = false;
        }
        if (TermArena::has_c(t.kind) && !done[t.c]) {
            stack.push_back(t.c);
            ready = false;
        }
        if (!ready) continue;
        stack.pop_back();
        uint64_t a = TermArena::has_a(t.kind) ? memo[t.a] : 0;
        uint64_t b = TermArena::has_b(t.kind) ? memo[t.b] : 0;
        uint64_t c = TermArena::has_c(t.kind) ? memo[t.c] : 0;
        uint64_t v;
        switch (t.kind) {
            case TermKind::Sym:
                v = t.cval < sym_values.size() ? mask_width(sym_values[t.cval], t.width) : 0;
                break;
            case TermKind::Slt: {
                unsigned w = arena.at(t.a).width;
                v = sign_extend(a, w) < sign_extend(b, w) ? 1 : 0;
                break;
            }
            case TermKind::Sle: {
                unsigned w = arena.at(t.a).width;
                v = sign_extend(a, w) <= sign_extend(b, w) ? 1 : 0;
                break;
            }
            case TermKind::Ult:
                v = a < b ? 1 : 0;
                break;
            case TermKind::Ule:
                v = a <= b ? 1 : 0;
                break;
            case TermKind::Eq:
                v = a == b ? 1 : 0;
                break;
            case TermKind::Ite:
                v = a ? b : c;  // children: a=cond, b=then, c=else
                break;
            case TermKind::ZExt:
                v = a;
                break;
            case TermKind::SExt: {
                unsigned sw = arena.at(t.a).width;
                v = mask_width(static_cast<uint64_t>(sign_extend(a, sw)), t.width);
                break;
            }
            case TermKind::Trunc:
                v = mask_width(a, t.width);
                break;
            default:
                v = eval_node(t, a, b);
                break;
        }
        memo[id] = v;
        done[id] = 1;
    }
    return memo[root];
}

bool model_to_tape(const SsaFormula& f, int goal, const std::vector<uint64_t>& sym_values,
                   InputTape& out) {
    // earliest satisfied instance of the goal
    uint32_t goal_seq = UINT32_MAX;
    for (const auto& inst : f.instances) {
        if (inst.goal != goal) continue;
        if (eval_term(f.arena, inst.cond, sym_values) != 0) {
            goal_seq = std::min(goal_seq, inst.seq);
        }
    }
    if (goal_seq == UINT32_MAX) return false;

    out.values.clear();
    for (size_t i = 0; i < f.symbols.size(); i++) {
        const NondetSym& s = f.symbols[i];
        if (s.seq > goal_seq) continue;
        if (eval_term(f.arena, s.guard, sym_values) == 0) continue;  // not consumed
        uint64_t v = i < sym_values.size() ? sym_values[i] : 0;
        out.push(s.type, v);
    }
    return true;
}

}  // namespace tgen::bmc
