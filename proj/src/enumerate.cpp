#include "idsolver/enumerate.hpp"

#include <algorithm>

namespace idsolver {

const char* to_string(StrategyKind k) {
    switch (k) {
        case StrategyKind::AlternatingFromZero: return "alternating";
        case StrategyKind::AscendingUp: return "up";
        case StrategyKind::DescendingDown: return "down";
        case StrategyKind::RandomPermutation: return "random";
    }
    return "?";
}

std::optional<StrategyKind> parse_strategy(const std::string& name) {
    if (name == "alternating") return StrategyKind::AlternatingFromZero;
    if (name == "up") return StrategyKind::AscendingUp;
    if (name == "down") return StrategyKind::DescendingDown;
    if (name == "random") return StrategyKind::RandomPermutation;
    return std::nullopt;
}

namespace {

Int magnitude(Int v) { return v < 0 ? -v : v; }

}  // namespace

std::optional<std::pair<Int, AlternatingState>> alternating_next(const Domain& d,
                                                                 AlternatingState st) {
    if (d.is_empty()) {
        return std::nullopt;
    }
    if (d.is_set()) {
        const auto& vs = d.set_values();
        if (!st.started) {
            st.started = true;
            auto first_nonneg = std::lower_bound(vs.begin(), vs.end(), Int{0}) - vs.begin();
            if (first_nonneg < static_cast<Int>(vs.size())) st.pos = first_nonneg;
            if (first_nonneg > 0) st.neg = first_nonneg - 1;
        }
        if (!st.pos && !st.neg) {
            return std::nullopt;
        }
        bool take_pos = st.pos && (!st.neg || vs[*st.pos] <= magnitude(vs[*st.neg]));
        Int v;
        if (take_pos) {
            v = vs[*st.pos];
            st.pos = *st.pos + 1 < static_cast<Int>(vs.size()) ? std::optional<Int>(*st.pos + 1)
                                                               : std::nullopt;
        } else {
            v = vs[*st.neg];
            st.neg = *st.neg > 0 ? std::optional<Int>(*st.neg - 1) : std::nullopt;
        }
        return std::make_pair(v, st);
    }
    if (!st.started) {
        st.started = true;
        // Clamped start: the in-domain values nearest to zero on each side.
        Bound pos_start = std::max(d.lo(), Bound(0));
        if (pos_start <= d.hi()) st.pos = pos_start.value();
        Bound neg_start = std::min(d.hi(), Bound(-1));
        if (d.lo() <= neg_start) st.neg = neg_start.value();
    }
    if (!st.pos && !st.neg) {
        return std::nullopt;
    }
    bool take_pos = st.pos && (!st.neg || *st.pos <= magnitude(*st.neg));
    Int v;
    if (take_pos) {
        v = *st.pos;
        bool more = Bound(v) < d.hi() && v < kIntLimit;
        st.pos = more ? std::optional<Int>(v + 1) : std::nullopt;
    } else {
        v = *st.neg;
        bool more = d.lo() < Bound(v) && v > -kIntLimit;
        st.neg = more ? std::optional<Int>(v - 1) : std::nullopt;
    }
    return std::make_pair(v, st);
}

ValueStream ValueStream::open(const Domain& d, Strategy strategy, std::uint64_t key) {
    ValueStream s;
    s.domain_ = d;
    s.kind_ = strategy.kind;
    switch (strategy.kind) {
        case StrategyKind::AlternatingFromZero:
            break;
        case StrategyKind::AscendingUp:
            if (!d.lo().finite()) {
                s.kind_ = StrategyKind::AlternatingFromZero;
                s.fell_back_ = true;
            } else {
                s.cursor_ = d.is_set() ? 0 : d.lo().value();
            }
            break;
        case StrategyKind::DescendingDown:
            if (!d.hi().finite()) {
                s.kind_ = StrategyKind::AlternatingFromZero;
                s.fell_back_ = true;
            } else {
                s.cursor_ = d.is_set() ? static_cast<Int>(d.set_values().size()) - 1 : d.hi().value();
            }
            break;
        case StrategyKind::RandomPermutation: {
            bool usable = d.finite() && !d.is_empty() &&
                          (d.is_set() || static_cast<Wide>(d.hi().value()) - d.lo().value() + 1 <=
                                             (static_cast<Wide>(1) << 62));
            if (!usable) {
                s.kind_ = StrategyKind::AlternatingFromZero;
                s.fell_back_ = true;
            } else if (d.is_set()) {
                s.perm_ = perm_setup(0, static_cast<Int>(d.set_values().size()) - 1, key);
            } else {
                s.perm_ = perm_setup(d.lo().value(), d.hi().value(), key);
            }
            break;
        }
    }
    if (d.is_empty()) {
        s.done_ = true;
    }
    return s;
}

std::optional<Int> ValueStream::next() {
    if (done_) {
        return std::nullopt;
    }
    std::optional<Int> out;
    switch (kind_) {
        case StrategyKind::AlternatingFromZero: {
            auto step = alternating_next(domain_, alt_);
            if (step) {
                out = step->first;
                alt_ = step->second;
            }
            break;
        }
        case StrategyKind::AscendingUp:
            if (domain_.is_set()) {
                if (*cursor_ < static_cast<Int>(domain_.set_values().size())) {
                    out = domain_.set_values()[*cursor_];
                    ++*cursor_;
                }
            } else if (Bound(*cursor_) <= domain_.hi()) {
                out = *cursor_;
                if (*cursor_ >= kIntLimit) {
                    done_ = true;
                } else {
                    ++*cursor_;
                }
            }
            break;
        case StrategyKind::DescendingDown:
            if (domain_.is_set()) {
                if (*cursor_ >= 0) {
                    out = domain_.set_values()[*cursor_];
                    --*cursor_;
                }
            } else if (domain_.lo() <= Bound(*cursor_)) {
                out = *cursor_;
                if (*cursor_ <= -kIntLimit) {
                    done_ = true;
                } else {
                    --*cursor_;
                }
            }
            break;
        case StrategyKind::RandomPermutation: {
            auto draw = perm_next(*perm_);
            if (draw) {
                perm_ = draw->next;
                out = domain_.is_set() ? domain_.set_values()[draw->value] : draw->value;
            }
            break;
        }
    }
    if (!out) {
        done_ = true;
    }
    return out;
}

ExistentialEnumerator::ExistentialEnumerator(const Domain& d, Strategy strategy, std::uint64_t key,
                                             std::uint64_t budget, ScopeTree& tree, ScopeId scope)
    : stream_(ValueStream::open(d, strategy, key))
    , budget_(budget)
    , tree_(tree)
    , scope_(scope)
    , infinite_(!d.finite()) {
    if (stream_.fell_back()) {
        tree_.mark_fallback(scope_);
    }
    if (infinite_) {
        tree_.record(scope_, EnumStatus::incomplete(IncompleteReason::InfiniteDomain));
    }
}

std::optional<Int> ExistentialEnumerator::next() {
    if (state_ != State::Running) {
        return std::nullopt;
    }
    if (trials_ >= budget_) {
        state_ = State::BudgetTripped;
        tree_.record(scope_, EnumStatus::incomplete(IncompleteReason::BudgetExhausted));
        tree_.note_cause(UnknownReason::BudgetExhausted);
        return std::nullopt;
    }
    auto v = stream_.next();
    if (!v) {
        state_ = State::Exhausted;
        tree_.record(scope_, EnumStatus::exhaustive());
        return std::nullopt;
    }
    ++trials_;
    tree_.count_step(scope_);
    return v;
}

void ExistentialEnumerator::stop_on_success() {
    tree_.mark_stopped_early(scope_);
    if (!infinite_) {
        // Could have been enumerated exhaustively; stopping is harmless.
        tree_.record(scope_, EnumStatus::exhaustive());
    }
}

UniversalCheck check_universal(const Domain& d, std::uint64_t budget,
                               const std::function<Verdict(Int)>& body) {
    UniversalCheck r;
    if (!d.finite()) {
        r.kind = UniversalCheck::Kind::AbortInfinite;
        return r;
    }
    if (*d.size() > budget) {
        r.kind = UniversalCheck::Kind::BudgetExceeded;
        return r;
    }
    bool unknown = false;
    for (Int v : d.materialize()) {
        ++r.checks;
        Verdict verdict = body(v);
        if (verdict == Verdict::Unsat) {
            r.kind = UniversalCheck::Kind::Counterexample;
            r.value = v;
            return r;
        }
        if (verdict == Verdict::Unknown) {
            unknown = true;
        }
    }
    r.kind = unknown ? UniversalCheck::Kind::Unknown : UniversalCheck::Kind::Holds;
    return r;
}

}  // namespace idsolver
