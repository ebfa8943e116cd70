#include <optional>

#include "idsolver/errors.hpp"
#include "idsolver/lang.hpp"

namespace idsolver {

Int evaluate(const Expr& e, const Assignment& a) {
    switch (e.kind) {
        case Expr::Kind::Lit:
            return e.value;
        case Expr::Kind::Var: {
            auto it = a.find(e.name);
            if (it == a.end()) {
                throw UnassignedVariable(e.name);
            }
            return it->second;
        }
        case Expr::Kind::Neg:
            return checked_neg(evaluate(*e.lhs, a));
        case Expr::Kind::Bin: {
            Int l = evaluate(*e.lhs, a);
            Int r = evaluate(*e.rhs, a);
            switch (e.op) {
                case ArithOp::Add: return checked_add(l, r);
                case ArithOp::Sub: return checked_sub(l, r);
                case ArithOp::Mul: return checked_mul(l, r);
                case ArithOp::Div: return trunc_div(l, r);
                case ArithOp::Mod: return euclid_mod(l, r);
            }
        }
    }
    return 0;
}

namespace {

struct Range {
    std::optional<Int> lo;
    std::optional<Int> hi;

    void at_least(Int v) {
        if (!lo || v > *lo) lo = v;
    }
    void at_most(Int v) {
        if (!hi || v < *hi) hi = v;
    }
};

// Tightens `r` with the conjuncts of `guard` that bound `var` by expressions
// not mentioning it.
void bound_from_guard(const Pred& guard, const std::string& var, const Assignment& a, Range& r) {
    switch (guard.kind) {
        case Pred::Kind::And:
            bound_from_guard(*guard.left, var, a, r);
            bound_from_guard(*guard.right, var, a, r);
            return;
        case Pred::Kind::In:
            if (guard.var == var && !mentions(*guard.lhs, var) && !mentions(*guard.rhs, var)) {
                r.at_least(evaluate(*guard.lhs, a));
                r.at_most(evaluate(*guard.rhs, a));
            }
            return;
        case Pred::Kind::Cmp: {
            CmpOp op = guard.cmp;
            const Expr* other = nullptr;
            if (guard.lhs->kind == Expr::Kind::Var && guard.lhs->name == var &&
                !mentions(*guard.rhs, var)) {
                other = guard.rhs.get();
            } else if (guard.rhs->kind == Expr::Kind::Var && guard.rhs->name == var &&
                       !mentions(*guard.lhs, var)) {
                other = guard.lhs.get();
                op = swapped(op);
            }
            if (!other) {
                return;
            }
            Int v = evaluate(*other, a);
            switch (op) {
                case CmpOp::Eq: r.at_least(v); r.at_most(v); break;
                case CmpOp::Lt: r.at_most(checked_sub(v, 1)); break;
                case CmpOp::Le: r.at_most(v); break;
                case CmpOp::Gt: r.at_least(checked_add(v, 1)); break;
                case CmpOp::Ge: r.at_least(v); break;
                case CmpOp::Ne: break;
            }
            return;
        }
        default:
            return;
    }
}

class Evaluator {
public:
    Evaluator(Assignment a, const QuantifierChoices* choices)
        : env_(std::move(a)), choices_(choices) {}

    // `positive` tracks the polarity of the current position; `mixed` is set
    // below an equivalence, where a subformula is used in both polarities.
    bool eval(const Pred& p, bool positive, bool mixed) {
        switch (p.kind) {
            case Pred::Kind::True: return true;
            case Pred::Kind::False: return false;
            case Pred::Kind::Cmp:
                return compare(p.cmp, evaluate(*p.lhs, env_), evaluate(*p.rhs, env_));
            case Pred::Kind::In: {
                Int v = evaluate(*Expr::var(p.var), env_);
                return evaluate(*p.lhs, env_) <= v && v <= evaluate(*p.rhs, env_);
            }
            case Pred::Kind::And:
                return eval(*p.left, positive, mixed) && eval(*p.right, positive, mixed);
            case Pred::Kind::Or:
                return eval(*p.left, positive, mixed) || eval(*p.right, positive, mixed);
            case Pred::Kind::Implies:
                return !eval(*p.left, !positive, mixed) || eval(*p.right, positive, mixed);
            case Pred::Kind::Iff:
                return eval(*p.left, positive, true) == eval(*p.right, positive, true);
            case Pred::Kind::Not:
                return !eval(*p.left, !positive, mixed);
            case Pred::Kind::Exists:
            case Pred::Kind::Forall:
                return quantifier(p, positive, mixed);
        }
        return false;
    }

private:
    bool quantifier(const Pred& p, bool positive, bool mixed) {
        bool is_exists = p.kind == Pred::Kind::Exists;
        if (choices_ && !mixed && is_exists == positive) {
            auto it = choices_->find(&p);
            if (it != choices_->end()) {
                return with_value(p.var, it->second, [&] { return eval(*p.body(), positive, mixed); });
            }
        }
        const Pred* guard = nullptr;
        if (is_exists) {
            guard = p.body().get();
        } else if (p.body()->kind == Pred::Kind::Implies) {
            guard = p.body()->left.get();
        }
        Range r;
        if (guard) {
            bound_from_guard(*guard, p.var, env_, r);
        }
        if (!r.lo || !r.hi) {
            throw InfiniteQuantifier(p.var);
        }
        for (Int v = *r.lo; v <= *r.hi; ++v) {
            bool holds = with_value(p.var, v, [&] { return eval(*p.body(), positive, mixed); });
            if (holds == is_exists) {
                return is_exists;
            }
        }
        return !is_exists;
    }

    template <typename F>
    bool with_value(const std::string& var, Int v, F&& f) {
        auto it = env_.find(var);
        std::optional<Int> saved;
        if (it != env_.end()) {
            saved = it->second;
        }
        env_[var] = v;
        bool result;
        try {
            result = f();
        } catch (...) {
            restore(var, saved);
            throw;
        }
        restore(var, saved);
        return result;
    }

    void restore(const std::string& var, const std::optional<Int>& saved) {
        if (saved) {
            env_[var] = *saved;
        } else {
            env_.erase(var);
        }
    }

    Assignment env_;
    const QuantifierChoices* choices_;
};

}  // namespace

bool evaluate(const Pred& p, const Assignment& a) {
    Evaluator ev(a, nullptr);
    return ev.eval(p, true, false);
}

bool evaluate_with_choices(const Pred& p, const Assignment& a, const QuantifierChoices& choices) {
    Evaluator ev(a, &choices);
    return ev.eval(p, true, false);
}

}  // namespace idsolver
