#include "idsolver/feistel.hpp"

#include "idsolver/errors.hpp"

namespace idsolver {

std::uint64_t mix64(std::uint64_t x) {
    std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

PermState perm_setup(Int lo, Int hi, std::uint64_t key) {
    if (lo > hi) {
        throw Error("perm_setup: empty interval");
    }
    Wide length = static_cast<Wide>(hi) - lo + 1;
    if (length > (static_cast<Wide>(1) << 62)) {
        throw IntervalTooLarge();
    }
    int bits = 0;
    while ((static_cast<Wide>(1) << bits) < length) {
        ++bits;
    }
    if (bits % 2 != 0) {
        ++bits;
    }
    if (bits < 2) {
        bits = 2;
    }
    PermState st;
    st.lo = lo;
    st.hi = hi;
    st.bits = bits;
    st.max_index = (std::uint64_t{1} << bits) - 1;
    st.right_mask = (std::uint64_t{1} << (bits / 2)) - 1;
    st.left_mask = st.max_index - st.right_mask;
    st.key = key;
    st.cursor = 0;
    return st;
}

namespace {

std::uint64_t round_fn(std::uint64_t half, const PermState& st) {
    return mix64(half ^ st.key) & st.right_mask;
}

}  // namespace

// Rounds map (L, R) to (R, L xor f(R)); the ciphertext is the swapped pair
// (R_r, L_r). With identical round keys this makes decryption the same
// network run on the ciphertext.
std::uint64_t feistel_encrypt(std::uint64_t idx, const PermState& st) {
    const int half = st.bits / 2;
    std::uint64_t left = (idx & st.left_mask) >> half;
    std::uint64_t right = idx & st.right_mask;
    for (int i = 0; i < st.rounds; ++i) {
        std::uint64_t next_right = left ^ round_fn(right, st);
        left = right;
        right = next_right;
    }
    return (right << half) | left;
}

std::uint64_t feistel_decrypt(std::uint64_t idx, const PermState& st) {
    const int half = st.bits / 2;
    // Undo the final swap, then run the rounds backwards.
    std::uint64_t right = (idx & st.left_mask) >> half;
    std::uint64_t left = idx & st.right_mask;
    for (int i = 0; i < st.rounds; ++i) {
        std::uint64_t prev_right = left;
        std::uint64_t prev_left = right ^ round_fn(left, st);
        left = prev_left;
        right = prev_right;
    }
    return (left << half) | right;
}

std::optional<PermDraw> perm_next(const PermState& st) {
    PermState next = st;
    const std::uint64_t span = st.length() - 1;
    while (next.cursor <= next.max_index) {
        std::uint64_t c = feistel_encrypt(next.cursor, next);
        ++next.cursor;
        if (c <= span) {
            return PermDraw{static_cast<Int>(static_cast<Wide>(st.lo) + c), next};
        }
    }
    return std::nullopt;
}

}  // namespace idsolver
