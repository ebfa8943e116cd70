#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "idsolver/integer.hpp"

namespace idsolver {

enum class ArithOp { Add, Sub, Mul, Div, Mod };
enum class CmpOp { Eq, Ne, Lt, Gt, Le, Ge };

CmpOp negate(CmpOp op);
/// The operator obtained by swapping the operands: a op b <=> b swapped(op) a.
CmpOp swapped(CmpOp op);
bool compare(CmpOp op, Int a, Int b);
const char* to_string(CmpOp op);
const char* to_string(ArithOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Lit, Var, Neg, Bin };

    Kind kind = Kind::Lit;
    Int value = 0;
    std::string name;
    ArithOp op = ArithOp::Add;
    ExprPtr lhs;
    ExprPtr rhs;

    static ExprPtr lit(Int v);
    static ExprPtr var(std::string name);
    static ExprPtr neg(ExprPtr e);
    static ExprPtr bin(ArithOp op, ExprPtr lhs, ExprPtr rhs);
};

bool operator==(const Expr& a, const Expr& b);

struct Pred;
using PredPtr = std::shared_ptr<const Pred>;

/// Constraint-language predicate. Binary connectives use `left`/`right`;
/// `Not` and the quantifiers keep their operand in `left` (see body()).
struct Pred {
    enum class Kind { True, False, Cmp, In, And, Or, Implies, Iff, Not, Exists, Forall };

    Kind kind = Kind::True;
    CmpOp cmp = CmpOp::Eq;
    ExprPtr lhs;   // Cmp lhs, In lower bound
    ExprPtr rhs;   // Cmp rhs, In upper bound
    std::string var;  // In / Exists / Forall
    PredPtr left;
    PredPtr right;

    const PredPtr& body() const { return left; }
    bool is_quantifier() const { return kind == Kind::Exists || kind == Kind::Forall; }

    static PredPtr truth(bool value);
    static PredPtr compare(CmpOp op, ExprPtr lhs, ExprPtr rhs);
    static PredPtr in(std::string var, ExprPtr lo, ExprPtr hi);
    static PredPtr conj(PredPtr a, PredPtr b);
    static PredPtr disj(PredPtr a, PredPtr b);
    static PredPtr implies(PredPtr a, PredPtr b);
    static PredPtr iff(PredPtr a, PredPtr b);
    static PredPtr negation(PredPtr p);
    static PredPtr exists(std::string var, PredPtr body);
    static PredPtr forall(std::string var, PredPtr body);
};

bool operator==(const Pred& a, const Pred& b);

using Assignment = std::map<std::string, Int>;

/// Values chosen for existential quantifier occurrences, keyed by AST node.
using QuantifierChoices = std::map<const Pred*, Int>;

PredPtr parse(std::string_view text);

std::string to_string(const Expr& e);
std::string to_string(const Pred& p);

std::set<std::string> free_vars(const Pred& p);
/// Free variables in order of first textual occurrence.
std::vector<std::string> free_vars_ordered(const Pred& p);
bool mentions(const Expr& e, const std::string& var);

Int evaluate(const Expr& e, const Assignment& a);

/// Classical two-valued semantics. Quantifiers range over the interval their
/// guard bounds; connectives are evaluated left to right with short-circuit.
bool evaluate(const Pred& p, const Assignment& a);

/// As evaluate(), but an existential occurrence listed in `choices` is
/// evaluated at the chosen value instead of being searched. Used to check
/// solver witnesses that include values of quantified variables.
bool evaluate_with_choices(const Pred& p, const Assignment& a, const QuantifierChoices& choices);

}  // namespace idsolver
