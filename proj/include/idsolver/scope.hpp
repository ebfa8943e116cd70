#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "idsolver/lang.hpp"

namespace idsolver {

using ScopeId = int;

enum class ScopeKind { Existential, Universal };

ScopeKind flip(ScopeKind k);
const char* to_string(ScopeKind k);

enum class IncompleteReason { InfiniteDomain, BudgetExhausted };

/// How thoroughly a scope's variable was enumerated. Joining is monotone:
/// NoEnumeration < Exhaustive < Incomplete, and Incomplete keeps the first
/// reason recorded.
struct EnumStatus {
    enum class Kind { NoEnumeration, Exhaustive, Incomplete };

    Kind kind = Kind::NoEnumeration;
    IncompleteReason reason = IncompleteReason::InfiniteDomain;

    static EnumStatus none() { return {}; }
    static EnumStatus exhaustive() { return {Kind::Exhaustive, IncompleteReason::InfiniteDomain}; }
    static EnumStatus incomplete(IncompleteReason r) { return {Kind::Incomplete, r}; }

    bool is_incomplete() const { return kind == Kind::Incomplete; }

    friend bool operator==(const EnumStatus& a, const EnumStatus& b) {
        return a.kind == b.kind && (a.kind != Kind::Incomplete || a.reason == b.reason);
    }
};

EnumStatus join(EnumStatus a, EnumStatus b);
std::string to_string(const EnumStatus& s);

enum class UnknownReason { InfiniteDomain, BudgetExhausted, UniversalInfinite, Timeout, UnverifiedWitness };

const char* to_string(UnknownReason r);

struct ScopeNode {
    ScopeId id = 0;
    ScopeKind kind = ScopeKind::Existential;
    std::string var;  // empty for the root scope, which holds the free variables
    std::optional<ScopeId> parent;
    std::vector<ScopeId> children;
    EnumStatus status;
    bool aborted = false;
    // A finite enumeration that was cut short by a success (existential) or a
    // counterexample (universal). Never a soundness concern.
    bool stopped_early = false;
    // Requested strategy was not applicable to the domain; alternating used.
    bool strategy_fallback = false;
    std::uint64_t steps = 0;
};

/// Scope tree of one solve. The root is existential and owns the free
/// variables; each quantifier occurrence gets one node per enclosing scope and
/// kind, shared by every branch that reaches it.
class ScopeTree {
public:
    ScopeTree();

    static constexpr ScopeId kRoot = 0;

    ScopeId child(ScopeId parent, ScopeKind kind, const std::string& var, const Pred* occurrence);

    void record(ScopeId id, EnumStatus status);
    void abort_universal(ScopeId id);
    void mark_stopped_early(ScopeId id);
    void mark_fallback(ScopeId id);
    void count_step(ScopeId id);
    /// Remembers why the search gave up; only the first cause is kept.
    void note_cause(UnknownReason reason);

    const ScopeNode& node(ScopeId id) const;
    const std::vector<ScopeNode>& nodes() const { return nodes_; }
    std::optional<UnknownReason> first_cause() const { return first_cause_; }
    int depth(ScopeId id) const;

private:
    ScopeNode& at(ScopeId id);

    std::vector<ScopeNode> nodes_;
    std::map<std::tuple<ScopeId, const Pred*, ScopeKind>, ScopeId> index_;
    std::optional<UnknownReason> first_cause_;
};

enum class Verdict { Sat, Unsat, Unknown };

const char* to_string(Verdict v);

struct SolveResult {
    Verdict verdict = Verdict::Unknown;
    Assignment witness;  // Sat only
    std::optional<UnknownReason> reason;  // Unknown only
    std::vector<ScopeNode> report;
    // Universal scopes checked on the branch that produced the witness, with
    // the status of that particular check.
    std::vector<std::pair<ScopeId, EnumStatus>> accepted_universals;
    std::uint64_t steps = 0;
};

/// Three-valued verdict from the enumeration record:
///  - a found assignment is a model (partial enumeration only ever happens in
///    existential scopes, so it cannot invalidate a witness);
///  - without one, Unsat needs every enumeration exhaustive or absent;
///  - anything else is Unknown.
SolveResult classify(const ScopeTree& tree, const std::optional<Assignment>& found);

}  // namespace idsolver
