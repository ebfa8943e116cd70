#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "idsolver/integer.hpp"

namespace idsolver {

/// Interval endpoint: -inf, a finite integer, or +inf.
class Bound {
public:
    enum class Kind { NegInf, Fin, PosInf };

    constexpr Bound() = default;
    constexpr Bound(Int v) : kind_(Kind::Fin), value_(v) {}  // NOLINT(implicit)

    static constexpr Bound neg_inf() { return Bound(Kind::NegInf); }
    static constexpr Bound pos_inf() { return Bound(Kind::PosInf); }

    Kind kind() const { return kind_; }
    bool finite() const { return kind_ == Kind::Fin; }
    Int value() const { return value_; }

    friend bool operator==(const Bound& a, const Bound& b) {
        return a.kind_ == b.kind_ && (a.kind_ != Kind::Fin || a.value_ == b.value_);
    }
    friend std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
        if (a.kind_ != b.kind_) {
            return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
        }
        if (a.kind_ != Kind::Fin) {
            return std::strong_ordering::equal;
        }
        return a.value_ <=> b.value_;
    }

private:
    explicit constexpr Bound(Kind k) : kind_(k) {}

    Kind kind_ = Kind::NegInf;
    Int value_ = 0;
};

std::string to_string(const Bound& b);

/// An integer domain: an interval with possibly infinite endpoints, an
/// explicit sorted set of values, or empty.
class Domain {
public:
    enum class Kind { Empty, Interval, FiniteSet };

    // Sets larger than this are kept as intervals; see remove().
    static constexpr std::size_t kSmallSetLimit = 64;

    Domain() = default;  // empty

    static Domain empty() { return Domain(); }
    static Domain all() { return interval(Bound::neg_inf(), Bound::pos_inf()); }
    static Domain interval(Bound lo, Bound hi);
    static Domain range(Int lo, Int hi) { return interval(lo, hi); }
    static Domain singleton(Int v) { return interval(v, v); }
    static Domain values(std::vector<Int> vs);
    static Domain boolean() { return range(0, 1); }

    Kind kind() const { return kind_; }
    bool is_empty() const { return kind_ == Kind::Empty; }
    bool is_interval() const { return kind_ == Kind::Interval; }
    bool is_set() const { return kind_ == Kind::FiniteSet; }

    /// Hull endpoints; undefined for the empty domain.
    Bound lo() const { return lo_; }
    Bound hi() const { return hi_; }
    const std::vector<Int>& set_values() const { return values_; }

    bool is_fixed() const;
    Int value() const;  // requires is_fixed()
    bool contains(Int v) const;
    bool finite() const;
    /// Number of values; nullopt when infinite.
    std::optional<std::uint64_t> size() const;

    /// Same set of integers, regardless of representation.
    bool same_set(const Domain& other) const;
    bool subset_of(const Domain& other) const;
    /// All values in ascending order (requires a finite domain).
    std::vector<Int> materialize() const;

    Domain with_lo(Bound lo) const;
    Domain with_hi(Bound hi) const;
    /// Removes one value. Interior holes of an interval are only represented
    /// when its width is within kSmallSetLimit; otherwise the interval is
    /// returned unchanged.
    Domain remove(Int v) const;

    friend bool operator==(const Domain& a, const Domain& b) {
        return a.kind_ == b.kind_ && a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.values_ == b.values_;
    }

private:
    Kind kind_ = Kind::Empty;
    Bound lo_;
    Bound hi_;
    std::vector<Int> values_;
};

std::string to_string(const Domain& d);
std::ostream& operator<<(std::ostream& os, const Domain& d);

Domain intersect(const Domain& a, const Domain& b);

struct FiniteInfo {
    bool finite = false;
    std::optional<std::uint64_t> cardinality;
};
FiniteInfo is_finite(const Domain& d);

enum class IntervalOp { Add, Sub, Mul };

/// Smallest interval containing { a op b | a in d1, b in d2 }. Finite results
/// beyond the integer limit widen to infinity.
Domain interval_arith(IntervalOp op, const Domain& d1, const Domain& d2);

/// Interval hull of { -a | a in d }.
Domain interval_neg(const Domain& d);

/// Hull of { a*a | a in d }; exact value set when d is a small set.
Domain square_image(const Domain& d);

/// { -r, r } when k = r*r, { 0 } for k = 0, nullopt otherwise.
std::optional<Domain> perfect_square_roots(Int k);

}  // namespace idsolver
