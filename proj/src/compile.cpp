#include "idsolver/engine.hpp"
#include "idsolver/errors.hpp"
#include "idsolver/rules.hpp"

namespace idsolver {

namespace {

class Compiler {
public:
    Compiler(Network& net, ScopeId scope, bool mixed) : net_(net), scope_(scope), mixed_(mixed) {}

    int pred(const Pred& p, Polarity pol, const Env& env) {
        const bool pos = pol == Polarity::Pos;
        switch (p.kind) {
            case Pred::Kind::True:
            case Pred::Kind::False:
                return net_.constant((p.kind == Pred::Kind::True) == pos ? 1 : 0);
            case Pred::Kind::Cmp:
                return atom(pos ? p.cmp : negate(p.cmp), *p.lhs, *p.rhs, env);
            case Pred::Kind::In: {
                ExprPtr v = Expr::var(p.var);
                if (pos) {
                    return connective(PropKind::And, atom(CmpOp::Le, *p.lhs, *v, env),
                                      atom(CmpOp::Le, *v, *p.rhs, env));
                }
                return connective(PropKind::Or, atom(CmpOp::Lt, *v, *p.lhs, env),
                                  atom(CmpOp::Gt, *v, *p.rhs, env));
            }
            case Pred::Kind::And:
                return connective(pos ? PropKind::And : PropKind::Or, pred(*p.left, pol, env),
                                  pred(*p.right, pol, env));
            case Pred::Kind::Or:
                return connective(pos ? PropKind::Or : PropKind::And, pred(*p.left, pol, env),
                                  pred(*p.right, pol, env));
            case Pred::Kind::Implies:
                if (pos) {
                    return connective(PropKind::Or, pred(*p.left, Polarity::Neg, env),
                                      pred(*p.right, Polarity::Pos, env));
                }
                return connective(PropKind::And, pred(*p.left, Polarity::Pos, env),
                                  pred(*p.right, Polarity::Neg, env));
            case Pred::Kind::Iff: {
                bool saved = mixed_;
                mixed_ = true;
                int out;
                if (pos) {
                    // (p => q) & (q => p)
                    int pq = connective(PropKind::Or, pred(*p.left, Polarity::Neg, env),
                                        pred(*p.right, Polarity::Pos, env));
                    int qp = connective(PropKind::Or, pred(*p.right, Polarity::Neg, env),
                                        pred(*p.left, Polarity::Pos, env));
                    out = connective(PropKind::And, pq, qp);
                } else {
                    // (p => not q) & (not q => p)
                    int pq = connective(PropKind::Or, pred(*p.left, Polarity::Neg, env),
                                        pred(*p.right, Polarity::Neg, env));
                    int qp = connective(PropKind::Or, pred(*p.right, Polarity::Pos, env),
                                        pred(*p.left, Polarity::Pos, env));
                    out = connective(PropKind::And, pq, qp);
                }
                mixed_ = saved;
                return out;
            }
            case Pred::Kind::Not:
                return pred(*p.left, flip(pol), env);
            case Pred::Kind::Exists:
            case Pred::Kind::Forall: {
                QuantItem item;
                item.pred = &p;
                item.pol = pol;
                item.cell = net_.new_bool(scope_);
                item.env = env;
                item.parent = scope_;
                item.mixed = mixed_;
                net_.items.push_back(item);
                return item.cell;
            }
        }
        throw CompileError("unsupported predicate");
    }

private:
    int expr(const Expr& e, const Env& env) {
        switch (e.kind) {
            case Expr::Kind::Lit:
                return net_.constant(e.value);
            case Expr::Kind::Var: {
                auto it = env.find(e.name);
                if (it == env.end()) {
                    throw CompileError("unbound variable '" + e.name + "'");
                }
                return it->second;
            }
            case Expr::Kind::Neg: {
                Propagator p;
                p.kind = PropKind::Neg;
                p.x = expr(*e.lhs, env);
                p.z = net_.new_var(Domain::all(), scope_);
                net_.post(p);
                return p.z;
            }
            case Expr::Kind::Bin: {
                Propagator p;
                p.x = expr(*e.lhs, env);
                p.y = expr(*e.rhs, env);
                switch (e.op) {
                    case ArithOp::Add: p.kind = PropKind::Add; break;
                    case ArithOp::Sub: p.kind = PropKind::Sub; break;
                    case ArithOp::Mul: p.kind = PropKind::Mul; break;
                    case ArithOp::Div: p.kind = PropKind::Div; break;
                    case ArithOp::Mod: p.kind = PropKind::Mod; break;
                }
                if (p.kind == PropKind::Mul && p.x == p.y) {
                    p.kind = PropKind::Square;
                    p.y = -1;
                }
                p.z = net_.new_var(Domain::all(), scope_);
                net_.post(p);
                return p.z;
            }
        }
        throw CompileError("unsupported expression");
    }

    std::optional<std::vector<DiffConstraint>> diffs(CmpOp op, const Expr& lhs, const Expr& rhs,
                                                     const Env& env) {
        auto norm = normalize(op, lhs, rhs);
        if (!norm) {
            return std::nullopt;
        }
        std::vector<DiffConstraint> out;
        for (const NormalizedDiff& d : *norm) {
            out.push_back({env.at(d.x), env.at(d.y), d.c});
        }
        return out;
    }

    int atom(CmpOp op, const Expr& lhs, const Expr& rhs, const Env& env) {
        Propagator p;
        p.kind = PropKind::ReifCmp;
        p.op = op;
        p.x = expr(lhs, env);
        p.y = expr(rhs, env);
        p.diffs_true = diffs(op, lhs, rhs, env);
        p.diffs_false = diffs(negate(op), lhs, rhs, env);
        p.z = net_.new_bool(scope_);
        net_.post(p);
        return p.z;
    }

    int connective(PropKind kind, int a, int b) {
        Propagator p;
        p.kind = kind;
        p.x = a;
        p.y = b;
        p.z = net_.new_bool(scope_);
        net_.post(p);
        return p.z;
    }

    Network& net_;
    ScopeId scope_;
    bool mixed_;
};

}  // namespace

int compile(const Pred& p, Polarity pol, ScopeId scope, Network& net, const Env& env, bool mixed) {
    Compiler c(net, scope, mixed);
    return c.pred(p, pol, env);
}

Network build_network(const Pred& p, bool rules_enabled) {
    Network net;
    net.enable_rules(rules_enabled);
    Env env;
    for (const std::string& name : free_vars_ordered(p)) {
        int v = net.new_var(Domain::all(), ScopeTree::kRoot, name);
        env[name] = v;
        net.decision_vars.push_back(v);
        net.witness.push_back({name, v, nullptr, false});
    }
    int root = compile(p, Polarity::Pos, ScopeTree::kRoot, net, env);
    net.roots.push_back(root);
    net.fix(root, 1);
    return net;
}

bool activate_items(Network& net, ScopeTree& tree) {
    bool any = false;
    for (std::size_t i = 0; i < net.items.size(); ++i) {
        if (net.items[i].activated || !net.domain(net.items[i].cell).is_fixed()) {
            continue;
        }
        net.items[i].activated = true;
        const QuantItem item = net.items[i];  // compiling below may grow `items`
        const Pred& q = *item.pred;
        const bool holds = net.domain(item.cell).value() == 1;
        const bool base_exists = (q.kind == Pred::Kind::Exists) == (item.pol == Polarity::Pos);
        // A false cell stands for the negated face: the dual quantifier over
        // the negated body.
        const bool face_exists = holds ? base_exists : !base_exists;
        const Polarity body_pol = holds ? item.pol : flip(item.pol);
        any = true;
        if (face_exists) {
            ScopeId scope = tree.child(item.parent, ScopeKind::Existential, q.var, &q);
            int v = net.new_var(Domain::all(), scope, q.var);
            Env env = item.env;
            env[q.var] = v;
            int body = compile(*q.body(), body_pol, scope, net, env, item.mixed);
            net.roots.push_back(body);
            net.decision_vars.push_back(v);
            net.witness.push_back({q.var, v, &q, holds && !item.mixed});
            net.fix(body, 1);
        } else {
            UniversalTask task;
            task.pred = &q;
            task.body_pol = body_pol;
            task.env = item.env;
            task.scope = tree.child(item.parent, ScopeKind::Universal, q.var, &q);
            task.mixed = item.mixed;
            net.universals.push_back(std::move(task));
        }
    }
    return any;
}

}  // namespace idsolver
