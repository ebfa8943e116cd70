#include "idsolver/scope.hpp"

#include "idsolver/errors.hpp"

namespace idsolver {

ScopeKind flip(ScopeKind k) {
    return k == ScopeKind::Existential ? ScopeKind::Universal : ScopeKind::Existential;
}

const char* to_string(ScopeKind k) { return k == ScopeKind::Existential ? "exists" : "forall"; }

EnumStatus join(EnumStatus a, EnumStatus b) {
    if (a.is_incomplete()) return a;
    if (b.is_incomplete()) return b;
    return static_cast<int>(a.kind) >= static_cast<int>(b.kind) ? a : b;
}

std::string to_string(const EnumStatus& s) {
    switch (s.kind) {
        case EnumStatus::Kind::NoEnumeration: return "none";
        case EnumStatus::Kind::Exhaustive: return "exhaustive";
        case EnumStatus::Kind::Incomplete:
            return s.reason == IncompleteReason::InfiniteDomain ? "incomplete(infinite_domain)"
                                                               : "incomplete(budget)";
    }
    return "?";
}

const char* to_string(UnknownReason r) {
    switch (r) {
        case UnknownReason::InfiniteDomain: return "infinite_domain";
        case UnknownReason::BudgetExhausted: return "budget";
        case UnknownReason::UniversalInfinite: return "universal_infinite";
        case UnknownReason::Timeout: return "timeout";
        case UnknownReason::UnverifiedWitness: return "unverified_witness";
    }
    return "?";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Sat: return "SAT";
        case Verdict::Unsat: return "UNSAT";
        case Verdict::Unknown: return "UNKNOWN";
    }
    return "?";
}

ScopeTree::ScopeTree() {
    ScopeNode root;
    root.id = kRoot;
    root.kind = ScopeKind::Existential;
    nodes_.push_back(root);
}

ScopeId ScopeTree::child(ScopeId parent, ScopeKind kind, const std::string& var,
                         const Pred* occurrence) {
    at(parent);
    auto key = std::make_tuple(parent, occurrence, kind);
    if (auto it = index_.find(key); it != index_.end()) {
        return it->second;
    }
    ScopeNode n;
    n.id = static_cast<ScopeId>(nodes_.size());
    n.kind = kind;
    n.var = var;
    n.parent = parent;
    nodes_.push_back(n);
    nodes_[parent].children.push_back(n.id);
    index_.emplace(key, n.id);
    return n.id;
}

ScopeNode& ScopeTree::at(ScopeId id) {
    if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size()) {
        throw UnknownScope(id);
    }
    return nodes_[id];
}

const ScopeNode& ScopeTree::node(ScopeId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size()) {
        throw UnknownScope(id);
    }
    return nodes_[id];
}

void ScopeTree::record(ScopeId id, EnumStatus status) {
    ScopeNode& n = at(id);
    n.status = join(n.status, status);
}

void ScopeTree::abort_universal(ScopeId id) {
    ScopeNode& n = at(id);
    if (n.kind != ScopeKind::Universal) {
        throw Error("abort_universal on existential scope " + std::to_string(id));
    }
    n.aborted = true;
}

void ScopeTree::mark_stopped_early(ScopeId id) { at(id).stopped_early = true; }
void ScopeTree::mark_fallback(ScopeId id) { at(id).strategy_fallback = true; }
void ScopeTree::count_step(ScopeId id) { ++at(id).steps; }

void ScopeTree::note_cause(UnknownReason reason) {
    if (!first_cause_) {
        first_cause_ = reason;
    }
}

int ScopeTree::depth(ScopeId id) const {
    int d = 0;
    for (auto p = node(id).parent; p; p = nodes_[*p].parent) {
        ++d;
    }
    return d;
}

SolveResult classify(const ScopeTree& tree, const std::optional<Assignment>& found) {
    SolveResult r;
    r.report = tree.nodes();
    for (const ScopeNode& n : tree.nodes()) {
        r.steps += n.steps;
    }
    if (found) {
        r.verdict = Verdict::Sat;
        r.witness = *found;
        return r;
    }
    std::optional<UnknownReason> first;
    for (const ScopeNode& n : tree.nodes()) {
        if (n.aborted) {
            first = UnknownReason::UniversalInfinite;
            break;
        }
        if (n.status.is_incomplete()) {
            first = n.status.reason == IncompleteReason::InfiniteDomain
                        ? UnknownReason::InfiniteDomain
                        : UnknownReason::BudgetExhausted;
            break;
        }
    }
    if (!first && !tree.first_cause()) {
        r.verdict = Verdict::Unsat;
        return r;
    }
    r.verdict = Verdict::Unknown;
    r.reason = tree.first_cause() ? tree.first_cause() : first;
    return r;
}

}  // namespace idsolver
