#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "idsolver/integer.hpp"

namespace idsolver {

/// Fisher-Yates shuffle: for i from n-1 down to 1, swap item i with a
/// uniformly chosen item j, 0 <= j <= i.
template <typename T, typename Rng>
std::vector<T> fisher_yates(std::vector<T> items, Rng& rng) {
    for (std::size_t i = items.size(); i-- > 1;) {
        std::uniform_int_distribution<std::size_t> pick(0, i);
        std::swap(items[i], items[pick(rng)]);
    }
    return items;
}

/// SplitMix64 finalizer applied to x + golden gamma.
std::uint64_t mix64(std::uint64_t x);

/// Iterator state of a random permutation of [lo, hi], driven by a balanced
/// Feistel cipher on n-bit indices and cycle walking.
struct PermState {
    Int lo = 0;
    Int hi = 0;
    int bits = 2;                 // n, always even
    std::uint64_t left_mask = 2;  // upper n/2 bits
    std::uint64_t right_mask = 1; // lower n/2 bits
    std::uint64_t key = 0;
    int rounds = 4;
    std::uint64_t cursor = 0;     // next cipher index to encrypt
    std::uint64_t max_index = 3;  // 2^n - 1

    std::uint64_t length() const { return static_cast<std::uint64_t>(hi - lo) + 1; }
};

/// Throws IntervalTooLarge when hi - lo + 1 > 2^62.
PermState perm_setup(Int lo, Int hi, std::uint64_t key = 0);

std::uint64_t feistel_encrypt(std::uint64_t idx, const PermState& st);
std::uint64_t feistel_decrypt(std::uint64_t idx, const PermState& st);

struct PermDraw {
    Int value;
    PermState next;
};

/// Next element of the permutation, or nullopt once all hi - lo + 1 values
/// have been produced.
std::optional<PermDraw> perm_next(const PermState& st);

}  // namespace idsolver
