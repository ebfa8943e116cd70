#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "idsolver/domain.hpp"
#include "idsolver/lang.hpp"
#include "idsolver/rules.hpp"
#include "idsolver/scope.hpp"

namespace idsolver {

enum class Polarity { Pos, Neg };

inline Polarity flip(Polarity p) { return p == Polarity::Pos ? Polarity::Neg : Polarity::Pos; }

enum class PropKind {
    ReifCmp,  // z <-> (x op y)
    And,      // z <-> (x & y), all boolean
    Or,       // z <-> (x | y)
    Add,      // z = x + y
    Sub,      // z = x - y
    Neg,      // z = -x
    Mul,      // z = x * y, x and y distinct
    Square,   // z = x * x
    Div,      // z = x / y, forward only
    Mod,      // z = x mod y, remainder range only
    DiffLe,   // x <= y + c
};

struct Propagator {
    PropKind kind = PropKind::ReifCmp;
    int z = -1;
    int x = -1;
    int y = -1;
    CmpOp op = CmpOp::Eq;
    Int c = 0;
    // ReifCmp only: difference constraints implied by the atom being true /
    // false, handed to the rule store once the cell is fixed.
    std::optional<std::vector<DiffConstraint>> diffs_true;
    std::optional<std::vector<DiffConstraint>> diffs_false;
    bool fed = false;
};

struct VarCell {
    Domain dom;
    std::vector<int> watchers;
    ScopeId scope = ScopeTree::kRoot;
    std::string name;  // empty for intermediate results
    bool boolean = false;
    int defined_by = -1;  // And/Or propagator whose result this cell is
};

using Env = std::map<std::string, int>;

/// A quantifier occurrence compiled into a boolean cell. Its body is only
/// compiled once the cell is fixed, since the value decides which face
/// (existential or universal) is needed.
struct QuantItem {
    const Pred* pred = nullptr;
    Polarity pol = Polarity::Pos;
    int cell = -1;
    Env env;
    ScopeId parent = ScopeTree::kRoot;
    bool mixed = false;  // below an equivalence
    bool activated = false;
};

/// An activated universal face: for every value of `var` the body, compiled
/// with `body_pol`, must hold.
struct UniversalTask {
    const Pred* pred = nullptr;
    Polarity body_pol = Polarity::Pos;
    Env env;
    ScopeId scope = ScopeTree::kRoot;
    bool mixed = false;
    bool done = false;
};

struct WitnessEntry {
    std::string name;
    int cell = -1;
    const Pred* pred = nullptr;  // null for free variables
    bool choice = false;         // usable as a quantifier choice when validating
};

/// Variables, propagators and the agenda of one search node, plus the
/// bookkeeping the search needs. Copied at every branching point.
class Network {
public:
    enum class Status { AtFixpoint, Failed };

    int new_var(Domain d, ScopeId scope, std::string name = {}, bool boolean = false);
    int new_bool(ScopeId scope) { return new_var(Domain::boolean(), scope, {}, true); }
    int constant(Int v);

    int post(Propagator p);

    const Domain& domain(int v) const { return cells_.at(v).dom; }
    const VarCell& cell(int v) const { return cells_.at(v); }
    std::size_t var_count() const { return cells_.size(); }
    const std::vector<Propagator>& propagators() const { return props_; }

    /// Intersects the domain of v with d. Returns false when the network fails.
    bool narrow(int v, const Domain& d);
    bool fix(int v, Int value) { return narrow(v, Domain::singleton(value)); }

    /// Runs propagators until the agenda is empty or a domain empties. The
    /// work limit guards against slow convergence on unbounded domains; when
    /// it is hit the remaining agenda is kept and quiescent() is false.
    Status propagate();
    Status propagate(std::size_t max_runs);
    /// Runs a single queued propagator; nullopt when the agenda is empty.
    std::optional<int> step();

    bool failed() const { return failed_; }
    bool quiescent() const { return agenda_.empty(); }

    /// The propagator is satisfied by every combination of values in the
    /// current domains of its operands. Unfixed boolean results count as
    /// satisfied; whether they matter is the caller's business.
    bool holds_for_all(int prop) const;

    /// Picks agenda entries in a seeded random order instead of FIFO.
    void shuffle_agenda(std::uint64_t seed);

    void enable_rules(bool on) { rules_enabled_ = on; }
    bool rules_enabled() const { return rules_enabled_; }
    const RuleStore& rule_store() const { return store_; }

    // Search bookkeeping, maintained by the compiler and the solver.
    std::vector<int> roots;
    std::vector<QuantItem> items;
    std::vector<UniversalTask> universals;
    std::vector<int> decision_vars;
    std::vector<WitnessEntry> witness;

private:
    bool run(int p);
    bool run_reif(Propagator& p);
    bool feed_rules(const std::vector<DiffConstraint>& diffs);
    void enqueue(int p);
    void touch(int v);

    bool set_lo(int v, Bound b);
    bool set_hi(int v, Bound b);
    bool enforce(CmpOp op, int x, int y);

    std::vector<VarCell> cells_;
    std::vector<Propagator> props_;
    std::deque<int> agenda_;
    std::vector<char> queued_;
    std::map<Int, int> constants_;
    RuleStore store_;
    bool rules_enabled_ = true;
    bool failed_ = false;
    std::optional<std::mt19937_64> shuffle_;
};

/// Truth of `x op y` over the given domains: true if it holds for every pair
/// of values, false if for none, nullopt otherwise.
std::optional<bool> entailed(CmpOp op, const Domain& x, const Domain& y);

}  // namespace idsolver
