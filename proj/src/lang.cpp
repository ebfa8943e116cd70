#include "idsolver/lang.hpp"

#include <algorithm>
#include <functional>

namespace idsolver {

CmpOp negate(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return CmpOp::Ne;
        case CmpOp::Ne: return CmpOp::Eq;
        case CmpOp::Lt: return CmpOp::Ge;
        case CmpOp::Gt: return CmpOp::Le;
        case CmpOp::Le: return CmpOp::Gt;
        case CmpOp::Ge: return CmpOp::Lt;
    }
    return op;
}

CmpOp swapped(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return CmpOp::Gt;
        case CmpOp::Gt: return CmpOp::Lt;
        case CmpOp::Le: return CmpOp::Ge;
        case CmpOp::Ge: return CmpOp::Le;
        default: return op;
    }
}

bool compare(CmpOp op, Int a, Int b) {
    switch (op) {
        case CmpOp::Eq: return a == b;
        case CmpOp::Ne: return a != b;
        case CmpOp::Lt: return a < b;
        case CmpOp::Gt: return a > b;
        case CmpOp::Le: return a <= b;
        case CmpOp::Ge: return a >= b;
    }
    return false;
}

const char* to_string(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "/=";
        case CmpOp::Lt: return "<";
        case CmpOp::Gt: return ">";
        case CmpOp::Le: return "<=";
        case CmpOp::Ge: return ">=";
    }
    return "?";
}

const char* to_string(ArithOp op) {
    switch (op) {
        case ArithOp::Add: return "+";
        case ArithOp::Sub: return "-";
        case ArithOp::Mul: return "*";
        case ArithOp::Div: return "/";
        case ArithOp::Mod: return "mod";
    }
    return "?";
}

ExprPtr Expr::lit(Int v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Lit;
    e->value = v;
    return e;
}

ExprPtr Expr::var(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    e->name = std::move(name);
    return e;
}

ExprPtr Expr::neg(ExprPtr inner) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Neg;
    e->lhs = std::move(inner);
    return e;
}

ExprPtr Expr::bin(ArithOp op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Bin;
    e->op = op;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

namespace {

bool same(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) {
        return !a && !b;
    }
    return *a == *b;
}

bool same(const PredPtr& a, const PredPtr& b) {
    if (!a || !b) {
        return !a && !b;
    }
    return *a == *b;
}

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
        case Expr::Kind::Lit: return a.value == b.value;
        case Expr::Kind::Var: return a.name == b.name;
        case Expr::Kind::Neg: return same(a.lhs, b.lhs);
        case Expr::Kind::Bin: return a.op == b.op && same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
    }
    return false;
}

namespace {

std::shared_ptr<Pred> make(Pred::Kind kind) {
    auto p = std::make_shared<Pred>();
    p->kind = kind;
    return p;
}

std::shared_ptr<Pred> make_binary(Pred::Kind kind, PredPtr a, PredPtr b) {
    auto p = make(kind);
    p->left = std::move(a);
    p->right = std::move(b);
    return p;
}

}  // namespace

PredPtr Pred::truth(bool value) { return make(value ? Kind::True : Kind::False); }

PredPtr Pred::compare(CmpOp op, ExprPtr lhs, ExprPtr rhs) {
    auto p = make(Kind::Cmp);
    p->cmp = op;
    p->lhs = std::move(lhs);
    p->rhs = std::move(rhs);
    return p;
}

PredPtr Pred::in(std::string var, ExprPtr lo, ExprPtr hi) {
    auto p = make(Kind::In);
    p->var = std::move(var);
    p->lhs = std::move(lo);
    p->rhs = std::move(hi);
    return p;
}

PredPtr Pred::conj(PredPtr a, PredPtr b) { return make_binary(Kind::And, std::move(a), std::move(b)); }
PredPtr Pred::disj(PredPtr a, PredPtr b) { return make_binary(Kind::Or, std::move(a), std::move(b)); }
PredPtr Pred::implies(PredPtr a, PredPtr b) { return make_binary(Kind::Implies, std::move(a), std::move(b)); }
PredPtr Pred::iff(PredPtr a, PredPtr b) { return make_binary(Kind::Iff, std::move(a), std::move(b)); }

PredPtr Pred::negation(PredPtr inner) {
    auto p = make(Kind::Not);
    p->left = std::move(inner);
    return p;
}

PredPtr Pred::exists(std::string var, PredPtr body) {
    auto p = make(Kind::Exists);
    p->var = std::move(var);
    p->left = std::move(body);
    return p;
}

PredPtr Pred::forall(std::string var, PredPtr body) {
    auto p = make(Kind::Forall);
    p->var = std::move(var);
    p->left = std::move(body);
    return p;
}

bool operator==(const Pred& a, const Pred& b) {
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
        case Pred::Kind::True:
        case Pred::Kind::False:
            return true;
        case Pred::Kind::Cmp:
            return a.cmp == b.cmp && same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
        case Pred::Kind::In:
            return a.var == b.var && same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
        case Pred::Kind::Not:
            return same(a.left, b.left);
        case Pred::Kind::Exists:
        case Pred::Kind::Forall:
            return a.var == b.var && same(a.left, b.left);
        default:
            return same(a.left, b.left) && same(a.right, b.right);
    }
}

// ---------------------------------------------------------------------------
// Printing. Output re-parses to the same tree for any tree the parser can
// produce (literals are nonnegative there; "-5" parses as Neg(5)).

std::string to_string(const Expr& e) {
    auto operand = [](const ExprPtr& sub) {
        std::string s = to_string(*sub);
        return sub->kind == Expr::Kind::Bin ? "(" + s + ")" : s;
    };
    switch (e.kind) {
        case Expr::Kind::Lit: return std::to_string(e.value);
        case Expr::Kind::Var: return e.name;
        case Expr::Kind::Neg: {
            std::string s = to_string(*e.lhs);
            bool wrap = e.lhs->kind != Expr::Kind::Var &&
                        !(e.lhs->kind == Expr::Kind::Lit && e.lhs->value >= 0);
            return wrap ? "-(" + s + ")" : "-" + s;
        }
        case Expr::Kind::Bin:
            return operand(e.lhs) + " " + to_string(e.op) + " " + operand(e.rhs);
    }
    return "?";
}

std::string to_string(const Pred& p) {
    auto operand = [](const PredPtr& sub) {
        std::string s = to_string(*sub);
        switch (sub->kind) {
            case Pred::Kind::And:
            case Pred::Kind::Or:
            case Pred::Kind::Implies:
            case Pred::Kind::Iff:
                return "(" + s + ")";
            default:
                return s;
        }
    };
    switch (p.kind) {
        case Pred::Kind::True: return "true";
        case Pred::Kind::False: return "false";
        case Pred::Kind::Cmp:
            return to_string(*p.lhs) + " " + to_string(p.cmp) + " " + to_string(*p.rhs);
        case Pred::Kind::In:
            return p.var + " in " + to_string(*p.lhs) + ".." + to_string(*p.rhs);
        case Pred::Kind::And: return operand(p.left) + " & " + operand(p.right);
        case Pred::Kind::Or: return operand(p.left) + " or " + operand(p.right);
        case Pred::Kind::Implies: return operand(p.left) + " => " + operand(p.right);
        case Pred::Kind::Iff: return operand(p.left) + " <=> " + operand(p.right);
        case Pred::Kind::Not: return "not(" + to_string(*p.left) + ")";
        case Pred::Kind::Exists: return "exists(" + p.var + ", " + to_string(*p.left) + ")";
        case Pred::Kind::Forall: return "forall(" + p.var + ", " + to_string(*p.left) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------------------

namespace {

void collect_expr(const Expr& e, const std::vector<std::string>& bound,
                  std::vector<std::string>& out) {
    switch (e.kind) {
        case Expr::Kind::Lit:
            return;
        case Expr::Kind::Var:
            if (std::find(bound.begin(), bound.end(), e.name) == bound.end() &&
                std::find(out.begin(), out.end(), e.name) == out.end()) {
                out.push_back(e.name);
            }
            return;
        case Expr::Kind::Neg:
            collect_expr(*e.lhs, bound, out);
            return;
        case Expr::Kind::Bin:
            collect_expr(*e.lhs, bound, out);
            collect_expr(*e.rhs, bound, out);
            return;
    }
}

void collect_pred(const Pred& p, std::vector<std::string>& bound, std::vector<std::string>& out) {
    switch (p.kind) {
        case Pred::Kind::True:
        case Pred::Kind::False:
            return;
        case Pred::Kind::Cmp:
            collect_expr(*p.lhs, bound, out);
            collect_expr(*p.rhs, bound, out);
            return;
        case Pred::Kind::In:
            collect_expr(*Expr::var(p.var), bound, out);
            collect_expr(*p.lhs, bound, out);
            collect_expr(*p.rhs, bound, out);
            return;
        case Pred::Kind::Not:
            collect_pred(*p.left, bound, out);
            return;
        case Pred::Kind::Exists:
        case Pred::Kind::Forall:
            bound.push_back(p.var);
            collect_pred(*p.left, bound, out);
            bound.pop_back();
            return;
        default:
            collect_pred(*p.left, bound, out);
            collect_pred(*p.right, bound, out);
            return;
    }
}

}  // namespace

std::vector<std::string> free_vars_ordered(const Pred& p) {
    std::vector<std::string> bound;
    std::vector<std::string> out;
    collect_pred(p, bound, out);
    return out;
}

std::set<std::string> free_vars(const Pred& p) {
    auto ordered = free_vars_ordered(p);
    return {ordered.begin(), ordered.end()};
}

bool mentions(const Expr& e, const std::string& var) {
    switch (e.kind) {
        case Expr::Kind::Lit: return false;
        case Expr::Kind::Var: return e.name == var;
        case Expr::Kind::Neg: return mentions(*e.lhs, var);
        case Expr::Kind::Bin: return mentions(*e.lhs, var) || mentions(*e.rhs, var);
    }
    return false;
}

}  // namespace idsolver
