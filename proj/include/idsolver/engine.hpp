#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idsolver/enumerate.hpp"
#include "idsolver/lang.hpp"
#include "idsolver/network.hpp"
#include "idsolver/scope.hpp"

namespace idsolver {

struct SolverConfig {
    Strategy strategy;
    std::uint64_t budget = 10000;  // value trials per enumeration stream
    bool rules_enabled = true;
    std::optional<std::chrono::milliseconds> timeout;
};

/// Compiles `p` under `pol` into `net` and returns the boolean cell standing
/// for p (Pos) or not p (Neg). Free variables are looked up in `env`;
/// quantifier bodies are compiled later, by activate_items().
int compile(const Pred& p, Polarity pol, ScopeId scope, Network& net, const Env& env,
            bool mixed = false);

/// Network for solving `p`: one root-scope variable per free variable, the
/// compiled predicate required to hold.
Network build_network(const Pred& p, bool rules_enabled);

/// Compiles the bodies of quantifier items whose cells have become fixed.
/// Existential faces get a fresh decision variable in a child scope of
/// `tree`; universal faces are queued as UniversalTasks. Returns true if
/// anything was activated.
bool activate_items(Network& net, ScopeTree& tree);

/// First-solution search with three-valued outcome. WellDefinednessError
/// propagates to the caller.
SolveResult solve(const Pred& p, const SolverConfig& cfg = {});

struct AllResult {
    bool complete = false;
    std::optional<UnknownReason> reason;  // when incomplete
    std::vector<Assignment> solutions;    // projected, sorted, distinct
    std::vector<ScopeNode> report;
};

/// All assignments of `vars` that extend to a model. Only complete when every
/// enumeration involved was exhaustive; an infinite domain on a projection
/// variable gives up at once.
AllResult solve_all(const Pred& p, const std::vector<std::string>& vars, const SolverConfig& cfg = {});

}  // namespace idsolver
