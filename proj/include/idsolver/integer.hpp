#pragma once

#include <cstdint>

namespace idsolver {

using Int = std::int64_t;
__extension__ using Wide = __int128;

// Every integer value handled by the solver satisfies |v| <= kIntLimit.
// Arithmetic leaving that range raises OverflowError.
inline constexpr Int kIntLimit = Int{1} << 62;

Int checked(Wide v);
Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_neg(Int a);

/// Division truncating toward zero.
Int trunc_div(Int a, Int b);

/// Euclidean remainder: result in [0, |b|).
Int euclid_mod(Int a, Int b);

/// Largest r with r*r <= k, for k >= 0.
Int isqrt(Int k);

}  // namespace idsolver
