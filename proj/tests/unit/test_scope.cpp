#include <doctest.h>

#include "idsolver/errors.hpp"
#include "idsolver/lang.hpp"
#include "idsolver/scope.hpp"

using namespace idsolver;

TEST_CASE("status join is monotone and absorbing") {
    const EnumStatus none = EnumStatus::none();
    const EnumStatus ex = EnumStatus::exhaustive();
    const EnumStatus inf = EnumStatus::incomplete(IncompleteReason::InfiniteDomain);
    const EnumStatus bud = EnumStatus::incomplete(IncompleteReason::BudgetExhausted);
    CHECK(join(none, ex) == ex);
    CHECK(join(ex, none) == ex);
    CHECK(join(ex, bud) == bud);
    CHECK(join(bud, ex) == bud);
    CHECK(join(inf, bud) == inf);
    CHECK(join(bud, inf) == bud);
    CHECK(to_string(none) == "none");
    CHECK(to_string(ex) == "exhaustive");
    CHECK(to_string(inf) == "incomplete(infinite_domain)");
}

TEST_CASE("scope tree records") {
    ScopeTree t;
    CHECK(t.node(ScopeTree::kRoot).status == EnumStatus::none());
    PredPtr p = parse("forall(y, y in -15..5 => y <= 5)");
    ScopeId u = t.child(ScopeTree::kRoot, ScopeKind::Universal, "y", p.get());
    CHECK(t.child(ScopeTree::kRoot, ScopeKind::Universal, "y", p.get()) == u);
    CHECK(t.child(ScopeTree::kRoot, ScopeKind::Existential, "y", p.get()) != u);
    CHECK(t.depth(u) == 1);
    CHECK(t.node(u).parent == ScopeTree::kRoot);
    t.record(u, EnumStatus::exhaustive());
    CHECK(t.node(u).status == EnumStatus::exhaustive());
    t.record(u, EnumStatus::incomplete(IncompleteReason::BudgetExhausted));
    CHECK(t.node(u).status.is_incomplete());
    CHECK_THROWS_AS(t.record(42, EnumStatus::exhaustive()), UnknownScope);
    t.note_cause(UnknownReason::Timeout);
    t.note_cause(UnknownReason::BudgetExhausted);
    CHECK(t.first_cause() == UnknownReason::Timeout);
}

TEST_CASE("classification") {
    {
        ScopeTree t;
        t.record(0, EnumStatus::incomplete(IncompleteReason::InfiniteDomain));
        SolveResult r = classify(t, std::nullopt);
        CHECK(r.verdict == Verdict::Unknown);
        CHECK(r.reason == UnknownReason::InfiniteDomain);
        SolveResult s = classify(t, Assignment{{"x", 1}});
        CHECK(s.verdict == Verdict::Sat);
        CHECK(s.witness.at("x") == 1);
    }
    {
        ScopeTree t;
        t.record(0, EnumStatus::exhaustive());
        CHECK(classify(t, std::nullopt).verdict == Verdict::Unsat);
    }
    {
        ScopeTree t;
        CHECK(classify(t, std::nullopt).verdict == Verdict::Unsat);
    }
    {
        ScopeTree t;
        PredPtr p = parse("forall(x, x > 0 => x*x > 0)");
        ScopeId u = t.child(0, ScopeKind::Universal, "x", p.get());
        t.abort_universal(u);
        SolveResult r = classify(t, std::nullopt);
        CHECK(r.verdict == Verdict::Unknown);
        CHECK(r.reason == UnknownReason::UniversalInfinite);
    }
}
