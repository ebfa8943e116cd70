#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "idsolver/domain.hpp"
#include "idsolver/feistel.hpp"
#include "idsolver/scope.hpp"

namespace idsolver {

enum class StrategyKind { AlternatingFromZero, AscendingUp, DescendingDown, RandomPermutation };

struct Strategy {
    StrategyKind kind = StrategyKind::AlternatingFromZero;
    std::uint64_t seed = 0;

    static Strategy alternating() { return {}; }
    static Strategy up() { return {StrategyKind::AscendingUp, 0}; }
    static Strategy down() { return {StrategyKind::DescendingDown, 0}; }
    static Strategy random(std::uint64_t seed) { return {StrategyKind::RandomPermutation, seed}; }
};

const char* to_string(StrategyKind k);
std::optional<StrategyKind> parse_strategy(const std::string& name);

/// Cursor of the alternating enumerator: 0, 1, -1, 2, -2, ... restricted to
/// the domain. Starts at the in-domain values nearest to zero, positive side
/// first on ties; a side stops once it passes its bound.
struct AlternatingState {
    bool started = false;
    // Next candidate on each side: a value (intervals) or an index (sets).
    std::optional<Int> pos;
    std::optional<Int> neg;
};

/// nullopt means the domain has been enumerated exhaustively (never the case
/// for an infinite domain).
std::optional<std::pair<Int, AlternatingState>> alternating_next(const Domain& d,
                                                                 AlternatingState state);

/// Candidate values of one domain in the order a strategy prescribes.
class ValueStream {
public:
    /// `key` seeds the random permutation. Strategies that cannot apply to
    /// the domain fall back to alternating (see fell_back()).
    static ValueStream open(const Domain& d, Strategy strategy, std::uint64_t key);

    std::optional<Int> next();
    bool fell_back() const { return fell_back_; }
    StrategyKind effective() const { return kind_; }

private:
    Domain domain_;
    StrategyKind kind_ = StrategyKind::AlternatingFromZero;
    bool fell_back_ = false;
    AlternatingState alt_;
    std::optional<Int> cursor_;  // next value (interval) or index (set) for up/down
    std::optional<PermState> perm_;
    bool done_ = false;
};

/// Labels an existential variable and keeps its scope's enumeration record:
/// Incomplete(InfiniteDomain) before the first trial of an infinite domain,
/// Exhaustive once a finite stream is drained, Incomplete(BudgetExhausted)
/// when the step budget trips first.
class ExistentialEnumerator {
public:
    enum class State { Running, Exhausted, BudgetTripped };

    ExistentialEnumerator(const Domain& d, Strategy strategy, std::uint64_t key,
                          std::uint64_t budget, ScopeTree& tree, ScopeId scope);

    std::optional<Int> next();
    /// The consumer accepted a value and will not ask for more.
    void stop_on_success();

    State state() const { return state_; }
    std::uint64_t trials() const { return trials_; }
    bool infinite() const { return infinite_; }

private:
    ValueStream stream_;
    std::uint64_t budget_;
    ScopeTree& tree_;
    ScopeId scope_;
    bool infinite_;
    std::uint64_t trials_ = 0;
    State state_ = State::Running;
};

struct UniversalCheck {
    enum class Kind { Holds, Counterexample, AbortInfinite, BudgetExceeded, Unknown };

    Kind kind = Kind::Holds;
    Int value = 0;  // the counterexample
    std::uint64_t checks = 0;
};

/// Sweeps every value of `d` in ascending order, asking `body` for the
/// verdict of the quantified body at that value. The first Unsat value is a
/// counterexample. Infinite domains abort; domains larger than `budget` are
/// not attempted.
UniversalCheck check_universal(const Domain& d, std::uint64_t budget,
                               const std::function<Verdict(Int)>& body);

}  // namespace idsolver
