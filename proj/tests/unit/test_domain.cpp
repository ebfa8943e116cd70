#include <doctest.h>

#include <random>

#include "idsolver/domain.hpp"

using namespace idsolver;

namespace {

const Bound kNegInf = Bound::neg_inf();
const Bound kPosInf = Bound::pos_inf();

Domain random_domain(std::mt19937_64& rng) {
    auto pick = [&](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
    switch (pick(0, 3)) {
        case 0: {
            std::vector<Int> vs;
            for (Int n = pick(0, 5); n > 0; --n) vs.push_back(pick(-12, 12));
            return Domain::values(vs);
        }
        case 1: return Domain::interval(pick(0, 1) ? Bound(pick(-12, 12)) : kNegInf, kPosInf);
        case 2: return Domain::interval(kNegInf, Bound(pick(-12, 12)));
        default: {
            Int lo = pick(-12, 12);
            return Domain::range(lo, pick(lo - 1, 12));
        }
    }
}

// Representative points of a domain inside the window used by the oracle.
std::vector<Int> window(const Domain& d) {
    std::vector<Int> out;
    for (Int v = -40; v <= 40; ++v) {
        if (d.contains(v)) out.push_back(v);
    }
    return out;
}

}  // namespace

TEST_CASE("intersection") {
    CHECK(intersect(Domain::interval(0, kPosInf), Domain::interval(kNegInf, 5)) == Domain::range(0, 5));
    CHECK(intersect(Domain::values({-100, 100}), Domain::interval(0, kPosInf)).same_set(Domain::singleton(100)));
    CHECK(intersect(Domain::range(1, 3), Domain::values({5})).is_empty());
    CHECK(Domain::range(3, 2).is_empty());
    CHECK(Domain::values({}).is_empty());
}

TEST_CASE("finiteness") {
    FiniteInfo a = is_finite(Domain::range(-10, 10));
    CHECK(a.finite);
    CHECK(a.cardinality == 21u);
    FiniteInfo b = is_finite(Domain::interval(10001, kPosInf));
    CHECK_FALSE(b.finite);
    CHECK_FALSE(b.cardinality.has_value());
    CHECK(is_finite(Domain::values({-100, 100})).cardinality == 2u);
}

TEST_CASE("interval arithmetic") {
    CHECK(interval_arith(IntervalOp::Add, Domain::range(1, 2), Domain::range(10, 20)) == Domain::range(11, 22));
    CHECK(interval_arith(IntervalOp::Mul, Domain::range(-2, 3), Domain::interval(0, kPosInf)) == Domain::all());
    CHECK(interval_arith(IntervalOp::Mul, Domain::interval(10001, kPosInf), Domain::interval(10001, kPosInf)) ==
          Domain::interval(100020001, kPosInf));
    CHECK(interval_arith(IntervalOp::Sub, Domain::range(0, 5), Domain::interval(1, kPosInf)) ==
          Domain::interval(kNegInf, 4));
    CHECK(interval_neg(Domain::interval(3, kPosInf)) == Domain::interval(kNegInf, -3));
    CHECK(interval_arith(IntervalOp::Mul, Domain::range(kIntLimit / 2, kIntLimit / 2), Domain::range(4, 4))
              .hi() == kPosInf);
}

TEST_CASE("interval arithmetic contains every pointwise result") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        Domain a = random_domain(rng);
        Domain b = random_domain(rng);
        Domain add = interval_arith(IntervalOp::Add, a, b);
        Domain sub = interval_arith(IntervalOp::Sub, a, b);
        Domain mul = interval_arith(IntervalOp::Mul, a, b);
        Domain sq = square_image(a);
        Domain neg = interval_neg(a);
        Domain both = intersect(a, b);
        for (Int x : window(a)) {
            CHECK(sq.contains(x * x));
            CHECK(neg.contains(-x));
            CHECK(both.contains(x) == b.contains(x));
            for (Int y : window(b)) {
                CHECK(add.contains(x + y));
                CHECK(sub.contains(x - y));
                CHECK(mul.contains(x * y));
            }
        }
    }
}

TEST_CASE("perfect squares") {
    REQUIRE(perfect_square_roots(10000));
    CHECK(perfect_square_roots(10000)->same_set(Domain::values({-100, 100})));
    CHECK_FALSE(perfect_square_roots(10001));
    CHECK(perfect_square_roots(0)->same_set(Domain::singleton(0)));
    CHECK_FALSE(perfect_square_roots(-4));
    for (Int k = 0; k <= 2000; ++k) {
        Int r = 0;
        while ((r + 1) * (r + 1) <= k) ++r;
        CHECK(perfect_square_roots(k).has_value() == (r * r == k));
    }
}

TEST_CASE("square image of a small set is exact") {
    Domain d = square_image(Domain::values({-3, 2, 3}));
    CHECK(d.same_set(Domain::values({4, 9})));
}

TEST_CASE("removing values") {
    Domain d = Domain::range(0, 5).remove(0);
    CHECK(d.same_set(Domain::range(1, 5)));
    Domain h = Domain::range(0, 5).remove(3);
    CHECK(h.same_set(Domain::values({0, 1, 2, 4, 5})));
    Domain wide = Domain::range(0, 1000).remove(500);
    CHECK(wide.contains(500));
    CHECK(Domain::interval(0, kPosInf).remove(0) == Domain::interval(1, kPosInf));
    CHECK(Domain::singleton(4).remove(4).is_empty());
}

TEST_CASE("materialize and size") {
    CHECK(Domain::range(-2, 1).materialize() == std::vector<Int>{-2, -1, 0, 1});
    CHECK(Domain::values({5, -1, 5}).materialize() == std::vector<Int>{-1, 5});
    CHECK_FALSE(Domain::all().size().has_value());
    CHECK(Domain::range(kIntLimit - 1, kIntLimit).size() == 2u);
}
