#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "idsolver/enumerate.hpp"

using namespace idsolver;

namespace {

std::vector<Int> drain(const Domain& d, Strategy s, std::size_t limit = 100000) {
    ValueStream vs = ValueStream::open(d, s, 1);
    std::vector<Int> out;
    while (out.size() < limit) {
        auto v = vs.next();
        if (!v) break;
        out.push_back(*v);
    }
    return out;
}

Verdict holds_if(bool b) { return b ? Verdict::Sat : Verdict::Unsat; }

}  // namespace

TEST_CASE("alternating order") {
    CHECK(drain(Domain::range(-2, 1), Strategy::alternating()) == std::vector<Int>{0, 1, -1, -2});
    CHECK(drain(Domain::values({-100, 100}), Strategy::alternating()) == std::vector<Int>{100, -100});
    CHECK(drain(Domain::interval(10001, Bound::pos_inf()), Strategy::alternating(), 3) ==
          std::vector<Int>{10001, 10002, 10003});
    CHECK(drain(Domain::interval(Bound::neg_inf(), -5), Strategy::alternating(), 2) == std::vector<Int>{-5, -6});
    CHECK(drain(Domain::all(), Strategy::alternating(), 5) == std::vector<Int>{0, 1, -1, 2, -2});
    CHECK(drain(Domain::range(-3, 3).remove(0), Strategy::alternating()) ==
          std::vector<Int>{1, -1, 2, -2, 3, -3});
    CHECK(drain(Domain::empty(), Strategy::alternating()).empty());
}

TEST_CASE("every finite domain is enumerated exactly once") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        Int lo = std::uniform_int_distribution<Int>(-50, 50)(rng);
        Int hi = std::uniform_int_distribution<Int>(lo - 1, 60)(rng);
        Domain d = Domain::range(lo, hi);
        if (rng() % 2 && !d.is_empty()) {
            d = d.remove(std::uniform_int_distribution<Int>(lo, hi)(rng));
        }
        for (Strategy s : {Strategy::alternating(), Strategy::up(), Strategy::down(), Strategy::random(rng())}) {
            std::vector<Int> got = drain(d, s);
            std::vector<Int> sorted = got;
            std::sort(sorted.begin(), sorted.end());
            CHECK(sorted == d.materialize());
        }
        std::vector<Int> up = drain(d, Strategy::up());
        CHECK(std::is_sorted(up.begin(), up.end()));
    }
}

TEST_CASE("strategy fallback") {
    ValueStream a = ValueStream::open(Domain::interval(Bound::neg_inf(), 3), Strategy::up(), 0);
    CHECK(a.fell_back());
    CHECK(a.effective() == StrategyKind::AlternatingFromZero);
    ValueStream b = ValueStream::open(Domain::interval(0, Bound::pos_inf()), Strategy::up(), 0);
    CHECK_FALSE(b.fell_back());
    ValueStream c = ValueStream::open(Domain::interval(0, Bound::pos_inf()), Strategy::random(1), 0);
    CHECK(c.fell_back());
    CHECK(parse_strategy("random") == StrategyKind::RandomPermutation);
    CHECK_FALSE(parse_strategy("sideways"));
}

TEST_CASE("random order depends on the key only") {
    Domain d = Domain::range(-15, 15);
    auto order = [&](std::uint64_t key) {
        ValueStream vs = ValueStream::open(d, Strategy::random(9), key);
        std::vector<Int> out;
        while (auto v = vs.next()) out.push_back(*v);
        return out;
    };
    CHECK(order(1) == order(1));
    CHECK(order(1) != order(2));
}

TEST_CASE("existential enumerator records its scope") {
    ScopeTree tree;
    {
        ExistentialEnumerator e(Domain::interval(0, Bound::pos_inf()), Strategy::alternating(), 0, 3, tree,
                                ScopeTree::kRoot);
        CHECK(tree.node(ScopeTree::kRoot).status == EnumStatus::incomplete(IncompleteReason::InfiniteDomain));
        CHECK(e.next() == 0);
        CHECK(e.next() == 1);
        CHECK(e.next() == 2);
        CHECK_FALSE(e.next());
        CHECK(e.state() == ExistentialEnumerator::State::BudgetTripped);
        CHECK(tree.first_cause() == UnknownReason::BudgetExhausted);
    }
    ScopeTree t2;
    ExistentialEnumerator f(Domain::range(1, 2), Strategy::alternating(), 0, 100, t2, ScopeTree::kRoot);
    CHECK(t2.node(0).status == EnumStatus::none());
    CHECK(f.next() == 1);
    CHECK(f.next() == 2);
    CHECK_FALSE(f.next());
    CHECK(f.state() == ExistentialEnumerator::State::Exhausted);
    CHECK(t2.node(0).status == EnumStatus::exhaustive());

    ScopeTree t3;
    ExistentialEnumerator g(Domain::range(-10, 10), Strategy::alternating(), 0, 100, t3, ScopeTree::kRoot);
    CHECK(g.next() == 0);
    g.stop_on_success();
    CHECK(t3.node(0).status == EnumStatus::exhaustive());
    CHECK(t3.node(0).stopped_early);
}

TEST_CASE("universal sweep") {
    UniversalCheck a = check_universal(Domain::range(-15, 5), 10000, [](Int y) { return holds_if(y <= 5); });
    CHECK(a.kind == UniversalCheck::Kind::Holds);
    CHECK(a.checks == 21);
    UniversalCheck b = check_universal(Domain::range(0, 10), 10000, [](Int x) { return holds_if(x > 2); });
    CHECK(b.kind == UniversalCheck::Kind::Counterexample);
    CHECK(b.value == 0);
    UniversalCheck c = check_universal(Domain::interval(0, Bound::pos_inf()), 10000, [](Int) { return Verdict::Sat; });
    CHECK(c.kind == UniversalCheck::Kind::AbortInfinite);
    UniversalCheck d = check_universal(Domain::range(0, 10), 5, [](Int) { return Verdict::Sat; });
    CHECK(d.kind == UniversalCheck::Kind::BudgetExceeded);
    UniversalCheck e = check_universal(Domain::range(0, 3), 10, [](Int x) {
        return x == 1 ? Verdict::Unknown : Verdict::Sat;
    });
    CHECK(e.kind == UniversalCheck::Kind::Unknown);
    UniversalCheck f = check_universal(Domain::range(0, 3), 10, [](Int x) {
        return x == 1 ? Verdict::Unknown : x == 2 ? Verdict::Unsat : Verdict::Sat;
    });
    CHECK(f.kind == UniversalCheck::Kind::Counterexample);
    CHECK(f.value == 2);
}
