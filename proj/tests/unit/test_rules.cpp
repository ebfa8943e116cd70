#include <doctest.h>

#include <random>

#include "idsolver/lang.hpp"
#include "idsolver/rules.hpp"

using namespace idsolver;

namespace {

std::optional<std::vector<NormalizedDiff>> norm(const char* text) { return normalize(*parse(text)); }

// Shortest paths for x <= y + c read as an edge x -> y of weight c.
// Returns nullopt on a negative cycle.
std::optional<std::vector<std::vector<std::optional<Int>>>> floyd(int n, const std::vector<DiffConstraint>& cs) {
    std::vector<std::vector<std::optional<Int>>> d(n, std::vector<std::optional<Int>>(n));
    for (const DiffConstraint& c : cs) {
        if (!d[c.x][c.y] || c.c < *d[c.x][c.y]) d[c.x][c.y] = c.c;
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (d[i][k] && d[k][j] && (!d[i][j] || *d[i][k] + *d[k][j] < *d[i][j])) {
                    d[i][j] = *d[i][k] + *d[k][j];
                }
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (d[i][i] && *d[i][i] < 0) return std::nullopt;
    }
    return d;
}

}  // namespace

TEST_CASE("normalization") {
    CHECK(norm("x > y") == std::vector<NormalizedDiff>{{"y", "x", -1}});
    CHECK(norm("x <= y") == std::vector<NormalizedDiff>{{"x", "y", 0}});
    CHECK(norm("x < y + 3") == std::vector<NormalizedDiff>{{"x", "y", 2}});
    CHECK(norm("x - 1 >= y") == std::vector<NormalizedDiff>{{"y", "x", -1}});
    CHECK(norm("x + 2 > y + 1") == std::vector<NormalizedDiff>{{"y", "x", 0}});
    CHECK(norm("x = y + 1") == std::vector<NormalizedDiff>{{"x", "y", 1}, {"y", "x", -1}});
    CHECK_FALSE(norm("x*x = 10*x"));
    CHECK_FALSE(norm("x > 3"));
    CHECK_FALSE(norm("x /= y"));
    CHECK_FALSE(norm("2*x > y"));
}

TEST_CASE("rule store examples") {
    {
        RuleStore s;
        CHECK(s.add({1, 0, -1}) == RuleStore::AddResult::Stored);
        CHECK(s.add({0, 1, -1}) == RuleStore::AddResult::Contradiction);
        CHECK(s.failed());
    }
    {
        RuleStore s;
        s.add({0, 1, 0});
        s.add({1, 2, 0});
        CHECK(s.bound(0, 2) == 0);
        CHECK(s.add({0, 2, 5}) == RuleStore::AddResult::Subsumed);
    }
    {
        // w > x, x > y, y > z, z > w with w, x, y, z = 0, 1, 2, 3
        RuleStore s;
        CHECK(s.add({1, 0, -1}) != RuleStore::AddResult::Contradiction);
        CHECK(s.add({2, 1, -1}) != RuleStore::AddResult::Contradiction);
        CHECK(s.add({3, 2, -1}) != RuleStore::AddResult::Contradiction);
        CHECK(s.add({0, 3, -1}) == RuleStore::AddResult::Contradiction);
    }
    {
        RuleStore s;
        CHECK(s.add({0, 0, 0}) == RuleStore::AddResult::Subsumed);
        CHECK(s.add({0, 0, -1}) == RuleStore::AddResult::Contradiction);
    }
    {
        RuleStore s;
        s.add({0, 1, 2});
        s.add({1, 0, -2});
        REQUIRE(s.equalities().size() == 1);
        const DiffEquality& e = s.equalities().front();
        CHECK(((e.x == 0 && e.y == 1 && e.offset == 2) || (e.x == 1 && e.y == 0 && e.offset == -2)));
    }
}

TEST_CASE("closure agrees with shortest paths") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 500; ++round) {
        const int n = 5;
        std::vector<DiffConstraint> cs;
        RuleStore s;
        bool contradiction = false;
        int count = std::uniform_int_distribution<int>(1, 9)(rng);
        for (int i = 0; i < count && !contradiction; ++i) {
            DiffConstraint c{std::uniform_int_distribution<int>(0, n - 1)(rng),
                             std::uniform_int_distribution<int>(0, n - 1)(rng),
                             std::uniform_int_distribution<Int>(-3, 4)(rng)};
            cs.push_back(c);
            contradiction = s.add(c) == RuleStore::AddResult::Contradiction;
        }
        auto d = floyd(n, cs);
        CHECK(contradiction == !d.has_value());
        if (!d) continue;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                CHECK((*d)[i][j] == s.bound(i, j));
            }
        }
    }
}
