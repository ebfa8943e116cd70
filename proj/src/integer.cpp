#include "idsolver/integer.hpp"

#include "idsolver/errors.hpp"

namespace idsolver {

Int checked(Wide v) {
    if (v > kIntLimit || v < -kIntLimit) {
        throw OverflowError("integer overflow: result exceeds 2^62 in magnitude");
    }
    return static_cast<Int>(v);
}

Int checked_add(Int a, Int b) { return checked(static_cast<Wide>(a) + b); }
Int checked_sub(Int a, Int b) { return checked(static_cast<Wide>(a) - b); }
Int checked_mul(Int a, Int b) { return checked(static_cast<Wide>(a) * b); }
Int checked_neg(Int a) { return checked(-static_cast<Wide>(a)); }

Int trunc_div(Int a, Int b) {
    if (b == 0) {
        throw DivisionByZero();
    }
    return a / b;
}

Int euclid_mod(Int a, Int b) {
    if (b == 0) {
        throw DivisionByZero();
    }
    Int r = a % b;
    if (r < 0) {
        r += b < 0 ? -b : b;
    }
    return r;
}

Int isqrt(Int k) {
    if (k <= 0) {
        return 0;
    }
    // Newton iteration on integers, started above the root.
    Wide x = k;
    Wide y = (x + 1) / 2;
    while (y < x) {
        x = y;
        y = (x + k / x) / 2;
    }
    return static_cast<Int>(x);
}

}  // namespace idsolver
