#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "tgen/sat/cnf.hpp"

namespace tgen::sat {

void Cnf::add_clause(std::vector<Lit> lits) {
    std::sort(lits.begin(), lits.end(),
              [](Lit a, Lit b) { return std::abs(a) == std::abs(b) ? a < b : std::abs(a) < std::abs(b); });
    std::vector<Lit> out;
    for (size_t i = 0; i < lits.size(); i++) {
        if (i + 1 < lits.size() && lits[i] == -lits[i + 1]) return;  // tautology
        if (out.empty() || out.back() != lits[i]) out.push_back(lits[i]);
    }
    if (out.empty()) {
        trivially_unsat = true;
        return;
    }
    clauses.push_back(std::move(out));
}

std::string to_dimacs(const Cnf& cnf) {
    std::ostringstream os;
    os << "p cnf " << cnf.var_count << " " << cnf.clauses.size() << "\n";
    for (const auto& c : cnf.clauses) {
        for (Lit l : c) os << l << " ";
        os << "0\n";
    }
    return os.str();
}

bool check_assignment(const Cnf& cnf, const std::vector<bool>& assignment) {
    for (const auto& c : cnf.clauses) {
        bool sat = false;
        for (Lit l : c) {
            size_t v = static_cast<size_t>(std::abs(l));
            if (v < assignment.size() && assignment[v] == (l > 0)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

namespace {

// Internal literal encoding: 2*var + sign over 0-based variables.
using ILit = uint32_t;
inline ILit ilit(Lit l) {
    uint32_t v = static_cast<uint32_t>(std::abs(l)) - 1;
    return (v << 1) | (l < 0 ? 1u : 0u);
}
inline ILit neg(ILit l) { return l ^ 1u; }
inline uint32_t var_of(ILit l) { return l >> 1; }

constexpr int kUndef = 0;
constexpr int kTrue = 1;
constexpr int kFalse = -1;

class Solver {
public:
    Solver(const Cnf& cnf, const SolverBudget& budget, const SolverConfig& cfg)
        : cnf_(cnf), budget_(budget), cfg_(cfg), nvars_(static_cast<uint32_t>(cnf.var_count)) {}

    SatResult run() {
        SatResult result;
        if (cnf_.trivially_unsat) {
            result.kind = SatResult::Kind::Unsat;
            return result;
        }
        init();
        // load problem clauses
        for (const auto& c : cnf_.clauses) {
            if (!add_problem_clause(c)) {
                result.kind = SatResult::Kind::Unsat;
                return result;
            }
        }
        if (propagate() != -1) {
            result.kind = SatResult::Kind::Unsat;
            return result;
        }

        uint64_t restart_limit = cfg_.restart_first;
        uint64_t conflicts_at_restart = 0;

        for (;;) {
            int confl = propagate();
            if (confl != -1) {
                conflicts_++;
                if (level_ == 0) {
                    result.kind = SatResult::Kind::Unsat;
                    result.conflicts = conflicts_;
                    return result;
                }
                std::vector<ILit> learned;
                int back_level = analyze(confl, learned);
                backtrack(back_level);
                attach_learned(learned);
                var_inc_ /= cfg_.activity_decay;
                if (var_inc_ > 1e100) rescale();
                if (conflicts_ >= budget_.max_conflicts || deadline_hit()) {
                    result.kind = SatResult::Kind::Unknown;
                    result.conflicts = conflicts_;
                    return result;
                }
                if (conflicts_ - conflicts_at_restart >= restart_limit) {
                    conflicts_at_restart = conflicts_;
                    restart_limit = static_cast<uint64_t>(
                        static_cast<double>(restart_limit) * cfg_.restart_factor);
                    backtrack(0);
                }
            } else {
                uint32_t v = pick_branch();
                if (v == nvars_) {
                    // complete assignment; verify before returning
                    result.kind = SatResult::Kind::Sat;
                    result.conflicts = conflicts_;
                    result.assignment.assign(static_cast<size_t>(nvars_) + 1, false);
                    for (uint32_t i = 0; i < nvars_; i++)
                        result.assignment[i + 1] = assigns_[i] == kTrue;
                    if (!check_assignment(cnf_, result.assignment))
                        result.kind = SatResult::Kind::Unknown;  // internal inconsistency
                    return result;
                }
                level_++;
                trail_lim_.push_back(trail_.size());
                enqueue((v << 1) | (phase_[v] ? 0u : 1u), -1);
            }
        }
    }

private:
    const Cnf& cnf_;
    const SolverBudget& budget_;
    const SolverConfig& cfg_;
    uint32_t nvars_;

    std::vector<std::vector<ILit>> db_;          // clause database (problem + learned)
    std::vector<std::vector<int>> watches_;      // per internal literal
    std::vector<int8_t> assigns_;                // per var
    std::vector<int> var_level_;
    std::vector<int> reason_;                    // clause index or -1
    std::vector<ILit> trail_;
    std::vector<size_t> trail_lim_;
    size_t qhead_ = 0;
    int level_ = 0;
    std::vector<double> activity_;
    std::vector<bool> phase_;
    double var_inc_ = 1.0;
    uint64_t conflicts_ = 0;
    std::vector<uint32_t> seen_;  // timestamping for analyze()
    uint32_t seen_stamp_ = 0;
    // branch order: lazy max-heap over (activity snapshot, var); stale
    // entries are tolerated, assigned vars get re-pushed on unassignment
    std::priority_queue<std::pair<double, uint32_t>> order_;

    void init() {
        watches_.assign(static_cast<size_t>(nvars_) * 2, {});
        assigns_.assign(nvars_, kUndef);
        var_level_.assign(nvars_, 0);
        reason_.assign(nvars_, -1);
        activity_.assign(nvars_, 0.0);
        phase_.assign(nvars_, false);
        seen_.assign(nvars_, 0);
        for (uint32_t v = 0; v < nvars_; v++) order_.push({0.0, v});
    }

    bool deadline_hit() const {
        if (!budget_.deadline) return false;
        if ((conflicts_ & 1023) != 0) return false;
        return std::chrono::steady_clock::now() >= *budget_.deadline;
    }

    int8_t value(ILit l) const {
        int8_t a = assigns_[var_of(l)];
        if (a == kUndef) return kUndef;
        return (l & 1) ? static_cast<int8_t>(-a) : a;
    }

    bool enqueue(ILit l, int reason_clause) {
        uint32_t v = var_of(l);
        if (assigns_[v] != kUndef) return value(l) == kTrue;
        assigns_[v] = (l & 1) ? kFalse : kTrue;
        var_level_[v] = level_;
        reason_[v] = reason_clause;
        phase_[v] = !(l & 1);
        trail_.push_back(l);
        return true;
    }

    bool add_problem_clause(const std::vector<Lit>& ext) {
        std::vector<ILit> c;
        c.reserve(ext.size());
        for (Lit l : ext) c.push_back(ilit(l));
        if (c.size() == 1) return enqueue(c[0], -1);
        int idx = static_cast<int>(db_.size());
        db_.push_back(std::move(c));
        watches_[neg(db_[idx][0])].push_back(idx);
        watches_[neg(db_[idx][1])].push_back(idx);
        return true;
    }

    void attach_learned(std::vector<ILit>& learned) {
        if (learned.size() == 1) {
            enqueue(learned[0], -1);
            return;
        }
        int idx = static_cast<int>(db_.size());
        db_.push_back(learned);
        watches_[neg(db_[idx][0])].push_back(idx);
        watches_[neg(db_[idx][1])].push_back(idx);
        enqueue(learned[0], idx);
    }

    // Returns conflicting clause index or -1.
    int propagate() {
        while (qhead_ < trail_.size()) {
            ILit p = trail_[qhead_++];  // p became true; scan watchers of ~p...
            std::vector<int>& ws = watches_[p];
            size_t i = 0, j = 0;
            int confl = -1;
            for (; i < ws.size(); i++) {
                int ci = ws[i];
                std::vector<ILit>& c = db_[ci];
                // make sure the false literal is c[1]
                ILit false_lit = neg(p);
                if (c[0] == false_lit) std::swap(c[0], c[1]);
                if (value(c[0]) == kTrue) {
                    ws[j++] = ci;
                    continue;
                }
                bool moved = false;
                for (size_t m = 2; m < c.size(); m++) {
                    if (value(c[m]) != kFalse) {
                        std::swap(c[1], c[m]);
                        watches_[neg(c[1])].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                // unit or conflict
                ws[j++] = ci;
                if (value(c[0]) == kFalse) {
                    confl = ci;
                    i++;
                    break;
                }
                enqueue(c[0], ci);
            }
            for (; i < ws.size(); i++) ws[j++] = ws[i];
            ws.resize(j);
            if (confl != -1) return confl;
        }
        return -1;
    }

    void bump(uint32_t v) {
        activity_[v] += var_inc_;
        if (activity_[v] > 1e100) rescale();
        if (assigns_[v] == kUndef) order_.push({activity_[v], v});
    }

    void rescale() {
        for (auto& a : activity_) a *= 1e-100;
        var_inc_ *= 1e-100;
        if (var_inc_ <= 0) var_inc_ = 1.0;
    }

    // First-UIP learning; returns backtrack level, fills `learned` with the
    // asserting clause (UIP first).
    int analyze(int confl, std::vector<ILit>& learned) {
        seen_stamp_++;
        learned.push_back(0);  // placeholder for the UIP literal
        int counter = 0;
        ILit p = UINT32_MAX;
        size_t index = trail_.size();

        for (;;) {
            const std::vector<ILit>& c = db_[confl];
            size_t start = (p == UINT32_MAX) ? 0 : 1;
            for (size_t i = start; i < c.size(); i++) {
                uint32_t v = var_of(c[i]);
                if (seen_[v] == seen_stamp_ || var_level_[v] == 0) continue;
                seen_[v] = seen_stamp_;
                bump(v);
                if (var_level_[v] == level_) {
                    counter++;
                } else {
                    learned.push_back(c[i]);
                }
            }
            // pick next literal on the trail at the current level
            do {
                index--;
                p = trail_[index];
            } while (seen_[var_of(p)] != seen_stamp_);
            counter--;
            if (counter == 0) break;
            confl = reason_[var_of(p)];
        }
        learned[0] = neg(p);

        int back = 0;
        if (learned.size() > 1) {
            // move the highest-level literal (other than UIP) to position 1
            size_t max_i = 1;
            for (size_t i = 2; i < learned.size(); i++)
                if (var_level_[var_of(learned[i])] > var_level_[var_of(learned[max_i])])
                    max_i = i;
            std::swap(learned[1], learned[max_i]);
            back = var_level_[var_of(learned[1])];
        }
        return back;
    }

    void backtrack(int to_level) {
        if (level_ <= to_level) return;
        size_t keep = trail_lim_[static_cast<size_t>(to_level)];
        for (size_t i = trail_.size(); i-- > keep;) {
            uint32_t v = var_of(trail_[i]);
            assigns_[v] = kUndef;
            reason_[v] = -1;
            order_.push({activity_[v], v});
        }
        trail_.resize(keep);
        trail_lim_.resize(static_cast<size_t>(to_level));
        qhead_ = trail_.size();
        level_ = to_level;
    }

    uint32_t pick_branch() {
        while (!order_.empty()) {
            uint32_t v = order_.top().second;
            if (assigns_[v] == kUndef) {
                order_.pop();
                return v;
            }
            order_.pop();
        }
        for (uint32_t v = 0; v < nvars_; v++)
            if (assigns_[v] == kUndef) return v;
        return nvars_;
    }
};

}  // namespace

SatResult solve_cnf(const Cnf& cnf, const SolverBudget& budget, const SolverConfig& config) {
    Solver s(cnf, budget, config);
    return s.run();
}

}  // namespace tgen::sat
