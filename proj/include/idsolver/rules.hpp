#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "idsolver/lang.hpp"

namespace idsolver {

/// x <= y + c over variable names, as produced by normalize().
struct NormalizedDiff {
    std::string x;
    std::string y;
    Int c = 0;

    friend bool operator==(const NormalizedDiff&, const NormalizedDiff&) = default;
};

/// Rewrites `lhs op rhs` into difference constraints when both sides have
/// the form `var`, `var + k` or `var - k` over distinct variables. Equality
/// gives two constraints. Everything else (including comparisons against a
/// constant, /=, and non-unit coefficients) is not applicable.
std::optional<std::vector<NormalizedDiff>> normalize(CmpOp op, const Expr& lhs, const Expr& rhs);
std::optional<std::vector<NormalizedDiff>> normalize(const Pred& atom);

/// x <= y + c over network variable ids.
struct DiffConstraint {
    int x = 0;
    int y = 0;
    Int c = 0;

    friend bool operator==(const DiffConstraint&, const DiffConstraint&) = default;
};

/// x = y + offset, derived when x <= y + offset and y <= x - offset are both
/// stored.
struct DiffEquality {
    int x = 0;
    int y = 0;
    Int offset = 0;

    friend bool operator==(const DiffEquality&, const DiffEquality&) = default;
};

/// Store of difference constraints kept closed under transitivity. One
/// constraint per ordered pair, always the tightest seen.
class RuleStore {
public:
    enum class AddResult { Stored, Subsumed, Contradiction };

    AddResult add(DiffConstraint dc);

    bool failed() const { return failed_; }
    std::optional<Int> bound(int x, int y) const;
    std::vector<DiffConstraint> constraints() const;
    const std::vector<DiffEquality>& equalities() const { return equalities_; }

    /// Constraints stored or tightened since the previous call.
    std::vector<DiffConstraint> take_new();

    /// Derivation steps performed so far.
    std::size_t iterations() const { return iterations_; }

private:
    // Returns false on contradiction.
    bool insert(DiffConstraint dc, std::vector<DiffConstraint>& agenda);
    void note_equality(int x, int y);

    std::map<std::pair<int, int>, Int> store_;
    std::map<int, std::map<int, Int>> out_;  // x -> {y -> c}
    std::map<int, std::map<int, Int>> in_;   // y -> {x -> c}
    std::vector<DiffConstraint> fresh_;
    std::vector<DiffEquality> equalities_;
    bool failed_ = false;
    std::size_t iterations_ = 0;
};

}  // namespace idsolver
