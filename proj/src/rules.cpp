#include "idsolver/rules.hpp"

#include <stdexcept>

namespace idsolver {

namespace {

struct Side {
    std::string var;
    Int offset = 0;
};

std::optional<Side> side_of(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Var:
            return Side{e.name, 0};
        case Expr::Kind::Bin: {
            if (e.op != ArithOp::Add && e.op != ArithOp::Sub) {
                return std::nullopt;
            }
            const Expr* inner = e.lhs.get();
            const Expr* k = e.rhs.get();
            if (e.op == ArithOp::Add && inner->kind == Expr::Kind::Lit) {
                std::swap(inner, k);
            }
            if (k->kind != Expr::Kind::Lit) {
                return std::nullopt;
            }
            auto s = side_of(*inner);
            if (!s) {
                return std::nullopt;
            }
            Wide off = static_cast<Wide>(s->offset) + (e.op == ArithOp::Add ? k->value : -k->value);
            if (off > kIntLimit || off < -kIntLimit) {
                return std::nullopt;
            }
            s->offset = static_cast<Int>(off);
            return s;
        }
        default:
            return std::nullopt;
    }
}

std::optional<Int> offset(Wide v) {
    if (v > kIntLimit || v < -kIntLimit) {
        return std::nullopt;
    }
    return static_cast<Int>(v);
}

}  // namespace

std::optional<std::vector<NormalizedDiff>> normalize(CmpOp op, const Expr& lhs, const Expr& rhs) {
    auto l = side_of(lhs);
    auto r = side_of(rhs);
    if (!l || !r || op == CmpOp::Ne) {
        return std::nullopt;
    }
    // l.var + a  op  r.var + b
    const Wide a = l->offset;
    const Wide b = r->offset;
    std::vector<NormalizedDiff> out;
    auto push = [&](const std::string& x, const std::string& y, Wide c) {
        auto k = offset(c);
        if (!k) {
            return false;
        }
        out.push_back({x, y, *k});
        return true;
    };
    bool ok = true;
    switch (op) {
        case CmpOp::Le: ok = push(l->var, r->var, b - a); break;
        case CmpOp::Lt: ok = push(l->var, r->var, b - a - 1); break;
        case CmpOp::Ge: ok = push(r->var, l->var, a - b); break;
        case CmpOp::Gt: ok = push(r->var, l->var, a - b - 1); break;
        case CmpOp::Eq: ok = push(l->var, r->var, b - a) && push(r->var, l->var, a - b); break;
        case CmpOp::Ne: ok = false; break;
    }
    if (!ok) {
        return std::nullopt;
    }
    return out;
}

std::optional<std::vector<NormalizedDiff>> normalize(const Pred& atom) {
    if (atom.kind != Pred::Kind::Cmp) {
        return std::nullopt;
    }
    return normalize(atom.cmp, *atom.lhs, *atom.rhs);
}

RuleStore::AddResult RuleStore::add(DiffConstraint dc) {
    if (failed_) {
        return AddResult::Contradiction;
    }
    std::vector<DiffConstraint> agenda;
    std::size_t before = fresh_.size();
    if (!insert(dc, agenda)) {
        failed_ = true;
        return AddResult::Contradiction;
    }
    if (fresh_.size() == before) {
        return AddResult::Subsumed;
    }
    // Incremental closure: compose every newly stored edge with the stored
    // edges entering its source and leaving its target.
    while (!agenda.empty()) {
        DiffConstraint e = agenda.back();
        agenda.pop_back();
        if (store_.at({e.x, e.y}) != e.c) {
            continue;  // tightened again meanwhile; that version is queued too
        }
        std::vector<DiffConstraint> derived;
        // Sums beyond the limit are too weak to matter; very negative ones
        // are clamped, which only weakens them.
        auto compose = [&](int x, int y, Int c1, Int c2) {
            ++iterations_;
            Wide c = static_cast<Wide>(c1) + c2;
            if (c <= kIntLimit) {
                derived.push_back({x, y, c < -kIntLimit ? -kIntLimit : static_cast<Int>(c)});
            }
        };
        for (const auto& [p, c1] : in_[e.x]) {
            compose(p, e.y, c1, e.c);
        }
        for (const auto& [q, c2] : out_[e.y]) {
            compose(e.x, q, e.c, c2);
        }
        for (const DiffConstraint& d : derived) {
            if (!insert(d, agenda)) {
                failed_ = true;
                return AddResult::Contradiction;
            }
        }
        if (iterations_ > (std::size_t{1} << 40)) {
            throw std::logic_error("difference closure did not terminate");
        }
    }
    return AddResult::Stored;
}

bool RuleStore::insert(DiffConstraint dc, std::vector<DiffConstraint>& agenda) {
    if (dc.x == dc.y) {
        return dc.c >= 0;
    }
    auto key = std::make_pair(dc.x, dc.y);
    if (auto it = store_.find(key); it != store_.end() && it->second <= dc.c) {
        return true;
    }
    store_[key] = dc.c;
    out_[dc.x][dc.y] = dc.c;
    in_[dc.y][dc.x] = dc.c;
    fresh_.push_back(dc);
    agenda.push_back(dc);
    note_equality(dc.x, dc.y);
    return true;
}

void RuleStore::note_equality(int x, int y) {
    auto forward = store_.find({x, y});
    auto backward = store_.find({y, x});
    if (forward == store_.end() || backward == store_.end()) {
        return;
    }
    if (forward->second + backward->second != 0) {
        return;
    }
    DiffEquality eq{x, y, forward->second};
    DiffEquality mirrored{y, x, backward->second};
    for (const DiffEquality& seen : equalities_) {
        if (seen == eq || seen == mirrored) {
            return;
        }
    }
    equalities_.push_back(eq);
}

std::optional<Int> RuleStore::bound(int x, int y) const {
    auto it = store_.find({x, y});
    if (it == store_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<DiffConstraint> RuleStore::constraints() const {
    std::vector<DiffConstraint> out;
    out.reserve(store_.size());
    for (const auto& [key, c] : store_) {
        out.push_back({key.first, key.second, c});
    }
    return out;
}

std::vector<DiffConstraint> RuleStore::take_new() {
    std::vector<DiffConstraint> out;
    out.swap(fresh_);
    return out;
}

}  // namespace idsolver
