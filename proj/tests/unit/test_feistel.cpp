#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "idsolver/errors.hpp"
#include "idsolver/feistel.hpp"

using namespace idsolver;

namespace {

std::vector<Int> drain(PermState st) {
    std::vector<Int> out;
    while (auto d = perm_next(st)) {
        out.push_back(d->value);
        st = d->next;
    }
    return out;
}

}  // namespace

TEST_CASE("setup widths and masks") {
    PermState a = perm_setup(1, 6);
    CHECK(a.bits == 4);
    CHECK(a.left_mask == 12);
    CHECK(a.right_mask == 3);
    PermState b = perm_setup(5, 5);
    CHECK(b.length() == 1);
    CHECK(b.bits == 2);
    CHECK(b.left_mask == 2);
    CHECK(b.right_mask == 1);
    PermState c = perm_setup(0, 255);
    CHECK(c.bits == 8);
    CHECK(c.right_mask == 15);
    CHECK(c.left_mask == 240);
    CHECK_THROWS_AS(perm_setup(-kIntLimit, kIntLimit), IntervalTooLarge);
    CHECK_NOTHROW(perm_setup(0, kIntLimit - 1));
}

TEST_CASE("encryption is a bijection on n-bit indices") {
    for (int n : {2, 4, 8, 16}) {
        PermState st = perm_setup(0, (Int{1} << n) - 1, 77);
        REQUIRE(st.bits == n);
        std::vector<bool> seen(std::size_t{1} << n);
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
            std::uint64_t e = feistel_encrypt(i, st);
            REQUIRE(e <= st.max_index);
            CHECK_FALSE(seen[e]);
            seen[e] = true;
            CHECK(feistel_decrypt(e, st) == i);
        }
    }
}

TEST_CASE("drains are permutations") {
    CHECK(drain(perm_setup(5, 5)) == std::vector<Int>{5});
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        Int lo = std::uniform_int_distribution<Int>(-1000000, 1000000)(rng);
        Int hi = lo + std::uniform_int_distribution<Int>(0, 700)(rng);
        std::vector<Int> got = drain(perm_setup(lo, hi, rng()));
        std::sort(got.begin(), got.end());
        std::vector<Int> want(static_cast<std::size_t>(hi - lo + 1));
        std::iota(want.begin(), want.end(), lo);
        CHECK(got == want);
    }
    // Near the integer limit.
    std::vector<Int> edge = drain(perm_setup(kIntLimit - 9, kIntLimit, 3));
    CHECK(std::set<Int>(edge.begin(), edge.end()).size() == 10);
}

TEST_CASE("different keys give different orders") {
    CHECK(drain(perm_setup(0, 99, 1)) != drain(perm_setup(0, 99, 2)));
    CHECK(drain(perm_setup(0, 99, 1)) == drain(perm_setup(0, 99, 1)));
}

TEST_CASE("distinct keys permute [0, 255] differently") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 50; ++i) {
        std::uint64_t k1 = rng();
        std::uint64_t k2 = rng();
        PermState a = perm_setup(0, 255, k1);
        PermState b = perm_setup(0, 255, k2);
        bool differs = false;
        for (std::uint64_t idx = 0; idx <= 255 && !differs; ++idx) {
            differs = feistel_encrypt(idx, a) != feistel_encrypt(idx, b);
        }
        CHECK(differs);
    }
}

TEST_CASE("fisher-yates") {
    std::mt19937_64 rng(1);
    CHECK(fisher_yates(std::vector<int>{}, rng).empty());
    CHECK(fisher_yates(std::vector<int>{7}, rng) == std::vector<int>{7});
    for (int i = 0; i < 50; ++i) {
        std::vector<int> in{3, 1, 4, 1, 5, 9, 2, 6};
        std::vector<int> out = fisher_yates(in, rng);
        std::sort(in.begin(), in.end());
        std::sort(out.begin(), out.end());
        CHECK(in == out);
    }
    // All 24 arrangements of four items about equally often
    // (23 dof, 0.1% critical value 49.73).
    std::map<std::vector<int>, int> seen;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) ++seen[fisher_yates(std::vector<int>{0, 1, 2, 3}, rng)];
    CHECK(seen.size() == 24);
    const double expected = trials / 24.0;
    double chi = 0;
    for (const auto& [perm, c] : seen) chi += (c - expected) * (c - expected) / expected;
    CHECK(chi < 49.73);
}
