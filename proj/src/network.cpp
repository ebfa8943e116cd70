#include "idsolver/network.hpp"

#include <algorithm>

#include "idsolver/errors.hpp"

namespace idsolver {

namespace {

// Bounds moved by k. A result beyond the integer limit is replaced by a
// weaker bound, so narrowing with it stays sound.
Bound shift_lo(Bound b, Int k) {
    if (!b.finite()) return b;
    Wide v = static_cast<Wide>(b.value()) + k;
    if (v < -kIntLimit) return Bound::neg_inf();
    if (v > kIntLimit) return Bound(kIntLimit);
    return Bound(static_cast<Int>(v));
}

Bound shift_hi(Bound b, Int k) {
    if (!b.finite()) return b;
    Wide v = static_cast<Wide>(b.value()) + k;
    if (v > kIntLimit) return Bound::pos_inf();
    if (v < -kIntLimit) return Bound(-kIntLimit);
    return Bound(static_cast<Int>(v));
}

Int floor_div(Int a, Int b) {
    Int q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

Int ceil_div(Int a, Int b) {
    Int q = a / b;
    if (a % b != 0 && ((a < 0) == (b < 0))) ++q;
    return q;
}

bool excludes_zero(const Domain& d) { return d.lo() > Bound(0) || d.hi() < Bound(0); }

bool bounded(const Domain& d) { return d.lo().finite() && d.hi().finite(); }

Domain negated(const Domain& d) {
    if (d.is_set()) {
        std::vector<Int> vs;
        for (Int v : d.set_values()) vs.push_back(-v);
        return Domain::values(std::move(vs));
    }
    return interval_neg(d);
}

// Integers x with x * y in z for some y in the given domain, as an interval
// hull. Requires z bounded and y of constant sign.
Domain quotient_hull(const Domain& z, const Domain& y) {
    Int lo = kIntLimit;
    Int hi = -kIntLimit;
    for (Int zv : {z.lo().value(), z.hi().value()}) {
        for (Bound yb : {y.lo(), y.hi()}) {
            // An infinite divisor drives the quotient to zero.
            Int c = yb.finite() ? ceil_div(zv, yb.value()) : 0;
            Int f = yb.finite() ? floor_div(zv, yb.value()) : 0;
            lo = std::min(lo, c);
            hi = std::max(hi, f);
        }
    }
    return Domain::range(lo, hi);
}

Domain square_roots_of(const Domain& z) {
    if (z.hi() < Bound(0)) {
        return Domain::empty();
    }
    if (z.is_fixed()) {
        auto r = perfect_square_roots(z.value());
        return r ? *r : Domain::empty();
    }
    if (z.is_set()) {
        std::vector<Int> roots;
        for (Int k : z.set_values()) {
            if (auto r = perfect_square_roots(k)) {
                for (Int v : r->set_values()) roots.push_back(v);
            }
        }
        return Domain::values(std::move(roots));
    }
    if (z.hi().finite()) {
        Int r = isqrt(z.hi().value());
        return Domain::range(-r, r);
    }
    return Domain::all();
}

Domain div_image(const Domain& x, const Domain& y) {
    if (bounded(x) && bounded(y) && excludes_zero(y)) {
        Int lo = kIntLimit;
        Int hi = -kIntLimit;
        for (Int a : {x.lo().value(), x.hi().value()}) {
            for (Int b : {y.lo().value(), y.hi().value()}) {
                Int q = trunc_div(a, b);
                lo = std::min(lo, q);
                hi = std::max(hi, q);
            }
        }
        return Domain::range(lo, hi);
    }
    if (bounded(x)) {
        Int m = std::max(std::abs(x.lo().value()), std::abs(x.hi().value()));
        return Domain::range(-m, m);
    }
    return Domain::all();
}

Domain mod_image(const Domain& x, const Domain& y) {
    if (x.is_fixed() && y.is_fixed()) {
        return Domain::singleton(euclid_mod(x.value(), y.value()));
    }
    if (bounded(y) && excludes_zero(y)) {
        Int m = std::max(std::abs(y.lo().value()), std::abs(y.hi().value()));
        return Domain::range(0, m - 1);
    }
    return Domain::interval(0, Bound::pos_inf());
}

}  // namespace

std::optional<bool> entailed(CmpOp op, const Domain& x, const Domain& y) {
    if (x.is_empty() || y.is_empty()) {
        return std::nullopt;
    }
    switch (op) {
        case CmpOp::Eq:
            if (x.is_fixed() && y.is_fixed()) return x.value() == y.value();
            if (intersect(x, y).is_empty()) return false;
            return std::nullopt;
        case CmpOp::Ne: {
            auto e = entailed(CmpOp::Eq, x, y);
            if (e) return !*e;
            return std::nullopt;
        }
        case CmpOp::Le:
            if (x.hi() <= y.lo()) return true;
            if (x.lo() > y.hi()) return false;
            return std::nullopt;
        case CmpOp::Lt:
            if (x.hi() < y.lo()) return true;
            if (x.lo() >= y.hi()) return false;
            return std::nullopt;
        case CmpOp::Ge: return entailed(CmpOp::Le, y, x);
        case CmpOp::Gt: return entailed(CmpOp::Lt, y, x);
    }
    return std::nullopt;
}

int Network::new_var(Domain d, ScopeId scope, std::string name, bool boolean) {
    VarCell c;
    c.dom = std::move(d);
    c.scope = scope;
    c.name = std::move(name);
    c.boolean = boolean;
    if (c.dom.is_empty()) {
        failed_ = true;
    }
    cells_.push_back(std::move(c));
    return static_cast<int>(cells_.size()) - 1;
}

int Network::constant(Int v) {
    if (auto it = constants_.find(v); it != constants_.end()) {
        return it->second;
    }
    int id = new_var(Domain::singleton(v), ScopeTree::kRoot);
    constants_.emplace(v, id);
    return id;
}

int Network::post(Propagator p) {
    int id = static_cast<int>(props_.size());
    for (int v : {p.z, p.x, p.y}) {
        if (v < 0) continue;
        auto& w = cells_.at(v).watchers;
        if (std::find(w.begin(), w.end(), id) == w.end()) {
            w.push_back(id);
        }
    }
    if (p.kind == PropKind::And || p.kind == PropKind::Or) {
        cells_.at(p.z).defined_by = id;
    }
    props_.push_back(std::move(p));
    queued_.push_back(0);
    enqueue(id);
    return id;
}

void Network::enqueue(int p) {
    if (!queued_[p]) {
        queued_[p] = 1;
        agenda_.push_back(p);
    }
}

void Network::touch(int v) {
    for (int p : cells_[v].watchers) {
        enqueue(p);
    }
}

bool Network::narrow(int v, const Domain& d) {
    if (failed_) {
        return false;
    }
    Domain& cur = cells_.at(v).dom;
    Domain next = intersect(cur, d);
    if (next.is_empty()) {
        failed_ = true;
        return false;
    }
    if (next.same_set(cur)) {
        return true;
    }
    cur = std::move(next);
    touch(v);
    return true;
}

bool Network::set_lo(int v, Bound b) {
    if (b.kind() == Bound::Kind::NegInf || b <= domain(v).lo()) {
        return true;
    }
    return narrow(v, Domain::interval(b, Bound::pos_inf()));
}

bool Network::set_hi(int v, Bound b) {
    if (b.kind() == Bound::Kind::PosInf || b >= domain(v).hi()) {
        return true;
    }
    return narrow(v, Domain::interval(Bound::neg_inf(), b));
}

bool Network::enforce(CmpOp op, int x, int y) {
    switch (op) {
        case CmpOp::Lt:
            return set_hi(x, shift_hi(domain(y).hi(), -1)) && set_lo(y, shift_lo(domain(x).lo(), 1));
        case CmpOp::Le:
            return set_hi(x, domain(y).hi()) && set_lo(y, domain(x).lo());
        case CmpOp::Gt: return enforce(CmpOp::Lt, y, x);
        case CmpOp::Ge: return enforce(CmpOp::Le, y, x);
        case CmpOp::Eq: {
            Domain d = intersect(domain(x), domain(y));
            return narrow(x, d) && narrow(y, d);
        }
        case CmpOp::Ne:
            if (domain(y).is_fixed() && !narrow(x, domain(x).remove(domain(y).value()))) return false;
            if (domain(x).is_fixed() && !narrow(y, domain(y).remove(domain(x).value()))) return false;
            return true;
    }
    return true;
}

void Network::shuffle_agenda(std::uint64_t seed) { shuffle_.emplace(seed); }

Network::Status Network::propagate() { return propagate(64 * (props_.size() + 16)); }

Network::Status Network::propagate(std::size_t max_runs) {
    std::size_t runs = 0;
    while (!failed_ && !agenda_.empty() && runs < max_runs) {
        step();
        ++runs;
    }
    return failed_ ? Status::Failed : Status::AtFixpoint;
}

std::optional<int> Network::step() {
    if (agenda_.empty()) {
        return std::nullopt;
    }
    int p;
    if (shuffle_) {
        std::uniform_int_distribution<std::size_t> pick(0, agenda_.size() - 1);
        auto it = agenda_.begin() + static_cast<std::ptrdiff_t>(pick(*shuffle_));
        p = *it;
        agenda_.erase(it);
    } else {
        p = agenda_.front();
        agenda_.pop_front();
    }
    queued_[p] = 0;
    if (!failed_ && !run(p)) {
        failed_ = true;
    }
    return p;
}

bool Network::feed_rules(const std::vector<DiffConstraint>& diffs) {
    for (const DiffConstraint& dc : diffs) {
        if (store_.add(dc) == RuleStore::AddResult::Contradiction) {
            failed_ = true;
            return false;
        }
    }
    for (const DiffConstraint& dc : store_.take_new()) {
        Propagator le;
        le.kind = PropKind::DiffLe;
        le.x = dc.x;
        le.y = dc.y;
        le.c = dc.c;
        post(le);
    }
    return true;
}

bool Network::run_reif(Propagator& p) {
    // `p` may be invalidated by posting, so copy what is needed.
    const int b = p.z;
    const int x = p.x;
    const int y = p.y;
    const CmpOp op = p.op;
    if (x == y) {
        return fix(b, compare(op, 0, 0) ? 1 : 0);
    }
    if (domain(b).is_fixed()) {
        bool holds = domain(b).value() == 1;
        if (rules_enabled_ && !p.fed) {
            p.fed = true;
            auto diffs = holds ? p.diffs_true : p.diffs_false;
            if (diffs && !feed_rules(*diffs)) {
                return false;
            }
        }
        return enforce(holds ? op : negate(op), x, y);
    }
    if (auto e = entailed(op, domain(x), domain(y))) {
        return fix(b, *e ? 1 : 0);
    }
    return true;
}

bool Network::run(int id) {
    Propagator& p = props_[id];
    const int z = p.z;
    const int x = p.x;
    const int y = p.y;
    auto fixed_to = [&](int v, Int k) { return domain(v).is_fixed() && domain(v).value() == k; };
    switch (p.kind) {
        case PropKind::ReifCmp:
            return run_reif(p);
        case PropKind::And:
            if (fixed_to(x, 0) || fixed_to(y, 0)) {
                if (!fix(z, 0)) return false;
            }
            if (fixed_to(x, 1) && fixed_to(y, 1)) {
                if (!fix(z, 1)) return false;
            }
            if (fixed_to(z, 1)) {
                return fix(x, 1) && fix(y, 1);
            }
            if (fixed_to(z, 0)) {
                if (fixed_to(x, 1)) return fix(y, 0);
                if (fixed_to(y, 1)) return fix(x, 0);
            }
            return true;
        case PropKind::Or:
            if (fixed_to(x, 1) || fixed_to(y, 1)) {
                if (!fix(z, 1)) return false;
            }
            if (fixed_to(x, 0) && fixed_to(y, 0)) {
                if (!fix(z, 0)) return false;
            }
            if (fixed_to(z, 0)) {
                return fix(x, 0) && fix(y, 0);
            }
            if (fixed_to(z, 1)) {
                if (fixed_to(x, 0)) return fix(y, 1);
                if (fixed_to(y, 0)) return fix(x, 1);
            }
            return true;
        case PropKind::Add:
            return narrow(z, interval_arith(IntervalOp::Add, domain(x), domain(y))) &&
                   narrow(x, interval_arith(IntervalOp::Sub, domain(z), domain(y))) &&
                   narrow(y, interval_arith(IntervalOp::Sub, domain(z), domain(x)));
        case PropKind::Sub:
            return narrow(z, interval_arith(IntervalOp::Sub, domain(x), domain(y))) &&
                   narrow(x, interval_arith(IntervalOp::Add, domain(z), domain(y))) &&
                   narrow(y, interval_arith(IntervalOp::Sub, domain(x), domain(z)));
        case PropKind::Neg:
            return narrow(z, negated(domain(x))) && narrow(x, negated(domain(z)));
        case PropKind::Mul:
            if (!narrow(z, interval_arith(IntervalOp::Mul, domain(x), domain(y)))) {
                return false;
            }
            // Backward only from a bounded product, where it cannot creep.
            if (bounded(domain(z)) && excludes_zero(domain(y))) {
                if (!narrow(x, quotient_hull(domain(z), domain(y)))) return false;
            }
            if (bounded(domain(z)) && excludes_zero(domain(x))) {
                if (!narrow(y, quotient_hull(domain(z), domain(x)))) return false;
            }
            return true;
        case PropKind::Square:
            return narrow(z, square_image(domain(x))) && narrow(x, square_roots_of(domain(z)));
        case PropKind::Div:
            if (domain(y).is_fixed() && domain(y).value() == 0) {
                throw DivisionByZero();
            }
            return narrow(z, div_image(domain(x), domain(y)));
        case PropKind::Mod:
            if (domain(y).is_fixed() && domain(y).value() == 0) {
                throw DivisionByZero();
            }
            return narrow(z, mod_image(domain(x), domain(y)));
        case PropKind::DiffLe:
            if (x == y) {
                return p.c >= 0;
            }
            return set_hi(x, shift_hi(domain(y).hi(), p.c)) && set_lo(y, shift_lo(domain(x).lo(), -p.c));
    }
    return true;
}

bool Network::holds_for_all(int id) const {
    const Propagator& p = props_.at(id);
    auto fixed_to = [&](int v, Int k) { return domain(v).is_fixed() && domain(v).value() == k; };
    auto image_within = [&](const Domain& image) { return image.subset_of(domain(p.z)); };
    switch (p.kind) {
        case PropKind::ReifCmp: {
            if (!domain(p.z).is_fixed()) return true;
            bool holds = domain(p.z).value() == 1;
            if (p.x == p.y) return compare(p.op, 0, 0) == holds;
            auto e = entailed(holds ? p.op : negate(p.op), domain(p.x), domain(p.y));
            return e && *e;
        }
        case PropKind::And:
            if (fixed_to(p.z, 1)) return fixed_to(p.x, 1) && fixed_to(p.y, 1);
            if (fixed_to(p.z, 0)) return fixed_to(p.x, 0) || fixed_to(p.y, 0);
            return true;
        case PropKind::Or:
            if (fixed_to(p.z, 1)) return fixed_to(p.x, 1) || fixed_to(p.y, 1);
            if (fixed_to(p.z, 0)) return fixed_to(p.x, 0) && fixed_to(p.y, 0);
            return true;
        case PropKind::Add:
            return image_within(interval_arith(IntervalOp::Add, domain(p.x), domain(p.y)));
        case PropKind::Sub:
            return image_within(interval_arith(IntervalOp::Sub, domain(p.x), domain(p.y)));
        case PropKind::Neg:
            return image_within(negated(domain(p.x)));
        case PropKind::Mul:
            return image_within(interval_arith(IntervalOp::Mul, domain(p.x), domain(p.y)));
        case PropKind::Square:
            return image_within(square_image(domain(p.x)));
        case PropKind::Div:
            return !domain(p.y).contains(0) && image_within(div_image(domain(p.x), domain(p.y)));
        case PropKind::Mod:
            return !domain(p.y).contains(0) && image_within(mod_image(domain(p.x), domain(p.y)));
        case PropKind::DiffLe: {
            if (p.x == p.y) return p.c >= 0;
            return domain(p.x).hi() <= shift_lo(domain(p.y).lo(), p.c);
        }
    }
    return false;
}

}  // namespace idsolver
