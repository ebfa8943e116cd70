#include "idsolver/domain.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace idsolver {

std::string to_string(const Bound& b) {
    switch (b.kind()) {
        case Bound::Kind::NegInf: return "-inf";
        case Bound::Kind::PosInf: return "+inf";
        case Bound::Kind::Fin: return std::to_string(b.value());
    }
    return "?";
}

Domain Domain::interval(Bound lo, Bound hi) {
    Domain d;
    if (lo.kind() == Bound::Kind::PosInf || hi.kind() == Bound::Kind::NegInf || lo > hi) {
        return d;
    }
    d.kind_ = Kind::Interval;
    d.lo_ = lo;
    d.hi_ = hi;
    return d;
}

Domain Domain::values(std::vector<Int> vs) {
    Domain d;
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    if (vs.empty()) {
        return d;
    }
    d.kind_ = Kind::FiniteSet;
    d.lo_ = vs.front();
    d.hi_ = vs.back();
    d.values_ = std::move(vs);
    return d;
}

bool Domain::is_fixed() const {
    switch (kind_) {
        case Kind::Empty: return false;
        case Kind::FiniteSet: return values_.size() == 1;
        case Kind::Interval: return lo_.finite() && lo_ == hi_;
    }
    return false;
}

Int Domain::value() const {
    assert(is_fixed());
    return lo_.value();
}

bool Domain::contains(Int v) const {
    switch (kind_) {
        case Kind::Empty: return false;
        case Kind::FiniteSet: return std::binary_search(values_.begin(), values_.end(), v);
        case Kind::Interval: return lo_ <= Bound(v) && Bound(v) <= hi_;
    }
    return false;
}

bool Domain::finite() const {
    return kind_ != Kind::Interval || (lo_.finite() && hi_.finite());
}

std::optional<std::uint64_t> Domain::size() const {
    switch (kind_) {
        case Kind::Empty: return 0;
        case Kind::FiniteSet: return values_.size();
        case Kind::Interval:
            if (!finite()) {
                return std::nullopt;
            }
            return static_cast<std::uint64_t>(hi_.value() - lo_.value()) + 1;
    }
    return std::nullopt;
}

bool Domain::same_set(const Domain& other) const {
    if (is_empty() || other.is_empty()) {
        return is_empty() && other.is_empty();
    }
    if (lo_ != other.lo_ || hi_ != other.hi_) {
        return false;
    }
    if (is_set() && other.is_set()) {
        return values_ == other.values_;
    }
    // Same hull; equal iff both are full (no holes).
    return size() == other.size();
}

bool Domain::subset_of(const Domain& other) const {
    return intersect(*this, other).same_set(*this);
}

std::vector<Int> Domain::materialize() const {
    assert(finite());
    if (is_set()) {
        return values_;
    }
    std::vector<Int> out;
    if (is_interval()) {
        for (Int v = lo_.value(); v <= hi_.value(); ++v) {
            out.push_back(v);
        }
    }
    return out;
}

Domain Domain::with_lo(Bound lo) const {
    return intersect(*this, interval(lo, Bound::pos_inf()));
}

Domain Domain::with_hi(Bound hi) const {
    return intersect(*this, interval(Bound::neg_inf(), hi));
}

Domain Domain::remove(Int v) const {
    if (!contains(v)) {
        return *this;
    }
    if (is_set()) {
        std::vector<Int> vs = values_;
        vs.erase(std::find(vs.begin(), vs.end(), v));
        return values(std::move(vs));
    }
    if (lo_ == Bound(v)) {
        return interval(Bound(v + 1), hi_);
    }
    if (hi_ == Bound(v)) {
        return interval(lo_, Bound(v - 1));
    }
    if (finite() && *size() <= kSmallSetLimit) {
        std::vector<Int> vs;
        for (Int x = lo_.value(); x <= hi_.value(); ++x) {
            if (x != v) {
                vs.push_back(x);
            }
        }
        return values(std::move(vs));
    }
    return *this;
}

std::string to_string(const Domain& d) {
    std::ostringstream os;
    os << d;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Domain& d) {
    switch (d.kind()) {
        case Domain::Kind::Empty:
            return os << "{}";
        case Domain::Kind::Interval:
            return os << "[" << to_string(d.lo()) << ", " << to_string(d.hi()) << "]";
        case Domain::Kind::FiniteSet: {
            os << "{";
            const char* sep = "";
            for (Int v : d.set_values()) {
                os << sep << v;
                sep = ", ";
            }
            return os << "}";
        }
    }
    return os;
}

Domain intersect(const Domain& a, const Domain& b) {
    if (a.is_empty() || b.is_empty()) {
        return Domain::empty();
    }
    if (a.is_interval() && b.is_interval()) {
        return Domain::interval(std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
    }
    if (a.is_set() && b.is_set()) {
        std::vector<Int> out;
        std::set_intersection(a.set_values().begin(), a.set_values().end(),
                              b.set_values().begin(), b.set_values().end(),
                              std::back_inserter(out));
        return Domain::values(std::move(out));
    }
    const Domain& set = a.is_set() ? a : b;
    const Domain& itv = a.is_set() ? b : a;
    std::vector<Int> out;
    for (Int v : set.set_values()) {
        if (itv.contains(v)) {
            out.push_back(v);
        }
    }
    return Domain::values(std::move(out));
}

FiniteInfo is_finite(const Domain& d) {
    FiniteInfo info;
    info.finite = d.finite();
    if (info.finite) {
        info.cardinality = d.size();
    }
    return info;
}

namespace {

// Endpoint value with room for products of two in-range integers.
struct Ext {
    int inf = 0;  // -1, 0 (finite) or +1
    Wide v = 0;
};

Ext ext(const Bound& b) {
    switch (b.kind()) {
        case Bound::Kind::NegInf: return {-1, 0};
        case Bound::Kind::PosInf: return {1, 0};
        case Bound::Kind::Fin: return {0, b.value()};
    }
    return {};
}

int sign(const Ext& e) {
    if (e.inf != 0) return e.inf;
    return e.v > 0 ? 1 : (e.v < 0 ? -1 : 0);
}

Ext add(const Ext& a, const Ext& b) {
    if (a.inf != 0) return a;
    if (b.inf != 0) return b;
    return {0, a.v + b.v};
}

Ext neg(const Ext& a) { return {-a.inf, -a.v}; }

// 0 * inf = 0: the zero is an actual member of the factor's domain.
Ext mul(const Ext& a, const Ext& b) {
    int s = sign(a) * sign(b);
    if (s == 0) return {0, 0};
    if (a.inf != 0 || b.inf != 0) return {s, 0};
    return {0, a.v * b.v};
}

bool less(const Ext& a, const Ext& b) {
    if (a.inf != b.inf) return a.inf < b.inf;
    return a.inf == 0 && a.v < b.v;
}

// Lower endpoints beyond the limit clamp inward (the set stays covered);
// upper endpoints beyond it widen to infinity.
Bound as_lo(const Ext& e) {
    if (e.inf < 0 || e.v < -static_cast<Wide>(kIntLimit)) return Bound::neg_inf();
    if (e.inf > 0 || e.v > kIntLimit) return Bound(kIntLimit);
    return Bound(static_cast<Int>(e.v));
}

Bound as_hi(const Ext& e) {
    if (e.inf > 0 || e.v > kIntLimit) return Bound::pos_inf();
    if (e.inf < 0 || e.v < -static_cast<Wide>(kIntLimit)) return Bound(-kIntLimit);
    return Bound(static_cast<Int>(e.v));
}

}  // namespace

Domain interval_arith(IntervalOp op, const Domain& d1, const Domain& d2) {
    if (d1.is_empty() || d2.is_empty()) {
        return Domain::empty();
    }
    Ext l1 = ext(d1.lo()), h1 = ext(d1.hi()), l2 = ext(d2.lo()), h2 = ext(d2.hi());
    switch (op) {
        case IntervalOp::Add:
            return Domain::interval(as_lo(add(l1, l2)), as_hi(add(h1, h2)));
        case IntervalOp::Sub:
            return Domain::interval(as_lo(add(l1, neg(h2))), as_hi(add(h1, neg(l2))));
        case IntervalOp::Mul: {
            Ext corners[] = {mul(l1, l2), mul(l1, h2), mul(h1, l2), mul(h1, h2)};
            Ext lo = corners[0], hi = corners[0];
            for (const Ext& c : corners) {
                if (less(c, lo)) lo = c;
                if (less(hi, c)) hi = c;
            }
            return Domain::interval(as_lo(lo), as_hi(hi));
        }
    }
    return Domain::empty();
}

Domain interval_neg(const Domain& d) {
    if (d.is_empty()) {
        return d;
    }
    if (d.is_set()) {
        std::vector<Int> vs;
        for (Int v : d.set_values()) {
            vs.push_back(-v);
        }
        return Domain::values(std::move(vs));
    }
    return Domain::interval(as_lo(neg(ext(d.hi()))), as_hi(neg(ext(d.lo()))));
}

Domain square_image(const Domain& d) {
    if (d.is_empty()) {
        return d;
    }
    if (d.is_set()) {
        std::vector<Int> vs;
        for (Int v : d.set_values()) {
            Wide sq = static_cast<Wide>(v) * v;
            if (sq > kIntLimit) {
                // Out of range squares: fall back to the hull.
                vs.clear();
                break;
            }
            vs.push_back(static_cast<Int>(sq));
        }
        if (!vs.empty()) {
            return Domain::values(std::move(vs));
        }
    }
    Ext lo = ext(d.lo()), hi = ext(d.hi());
    if (sign(lo) >= 0) {
        return Domain::interval(as_lo(mul(lo, lo)), as_hi(mul(hi, hi)));
    }
    if (sign(hi) <= 0) {
        return Domain::interval(as_lo(mul(hi, hi)), as_hi(mul(lo, lo)));
    }
    Ext a = mul(lo, lo), b = mul(hi, hi);
    return Domain::interval(Bound(0), as_hi(less(a, b) ? b : a));
}

std::optional<Domain> perfect_square_roots(Int k) {
    if (k < 0) {
        return std::nullopt;
    }
    Int r = isqrt(k);
    if (static_cast<Wide>(r) * r != k) {
        return std::nullopt;
    }
    return Domain::values({-r, r});
}

}  // namespace idsolver
