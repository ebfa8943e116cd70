#include <algorithm>
#include <set>
#include <stdexcept>

#include "idsolver/engine.hpp"
#include "idsolver/errors.hpp"
#include "idsolver/feistel.hpp"

namespace idsolver {

namespace {

// Generous cap for the final propagation at a leaf, where every decision
// variable is fixed and convergence is guaranteed.
constexpr std::size_t kLeafRuns = std::size_t{1} << 24;

enum class Kind { Found, Fail, Unknown };

struct Outcome {
    Kind kind = Kind::Fail;
    Assignment witness;  // free variables, then existential variables
    Assignment free;
    QuantifierChoices choices;
    std::vector<std::pair<ScopeId, EnumStatus>> universals;
};

Outcome fail() { return {}; }
Outcome unknown() {
    Outcome o;
    o.kind = Kind::Unknown;
    return o;
}

struct CellChoice {
    int cell = -1;
    Int first = 1;
};

class Search {
public:
    Search(const SolverConfig& cfg, ScopeTree& tree) : cfg_(cfg), tree_(tree) {
        if (cfg.timeout) {
            deadline_ = std::chrono::steady_clock::now() + *cfg.timeout;
        }
    }

    Outcome dfs(Network net) {
        if (timed_out()) {
            return unknown();
        }
        if (!settle(net)) {
            return fail();
        }
        if (auto leaf = shortcut(net)) {
            return finish(std::move(*leaf));
        }
        if (int v = pick_var(net); v >= 0) {
            return label(net, v);
        }
        if (auto c = pick_cell(net)) {
            return branch(net, *c);
        }
        return finish(std::move(net));
    }

    bool settle(Network& net) {
        while (true) {
            if (net.propagate() == Network::Status::Failed) {
                return false;
            }
            if (!activate_items(net, tree_)) {
                return true;
            }
        }
    }

    bool timed_out() {
        if (timed_out_) {
            return true;
        }
        if (deadline_ && std::chrono::steady_clock::now() > *deadline_) {
            timed_out_ = true;
            tree_.note_cause(UnknownReason::Timeout);
        }
        return timed_out_;
    }

    /// Every remaining decision has an explicit small domain and every
    /// constraint holds for all of its values: no search is needed.
    bool ready_without_search(const Network& net) const {
        if (!net.quiescent()) {
            return false;
        }
        for (const UniversalTask& u : net.universals) {
            if (!u.done) return false;
        }
        for (const QuantItem& item : net.items) {
            if (!item.activated && net.domain(item.cell).is_fixed()) return false;
        }
        if (pick_cell(net)) {
            return false;
        }
        for (int v : net.decision_vars) {
            const Domain& d = net.domain(v);
            if (!d.is_fixed() && !d.is_set()) return false;
        }
        for (std::size_t p = 0; p < net.propagators().size(); ++p) {
            if (!net.holds_for_all(static_cast<int>(p))) return false;
        }
        return true;
    }

    static Int first_value(const Domain& d) { return alternating_next(d, {})->first; }

    Outcome finish(Network net) {
        if (!net.quiescent()) {
            if (net.propagate(kLeafRuns) == Network::Status::Failed) {
                return fail();
            }
            if (!net.quiescent()) {
                throw Error("propagation did not converge");
            }
            if (activate_items(net, tree_) || pick_var(net) >= 0 || pick_cell(net)) {
                return dfs(std::move(net));
            }
        }
        for (std::size_t v = 0; v < net.var_count(); ++v) {
            if (!net.cell(static_cast<int>(v)).boolean && !net.domain(static_cast<int>(v)).is_fixed()) {
                throw OverflowError("arithmetic result exceeds the supported integer range");
            }
        }

        Outcome out;
        out.kind = Kind::Found;
        bool unsure = false;
        for (std::size_t i = 0; i < net.universals.size(); ++i) {
            if (net.universals[i].done) {
                continue;
            }
            const UniversalTask task = net.universals[i];
            Domain d = guard_domain(net, task);
            if (d.is_empty()) {
                out.universals.emplace_back(task.scope, EnumStatus::none());
                continue;
            }
            UniversalCheck chk = check_universal(d, cfg_.budget, [&](Int value) {
                tree_.count_step(task.scope);
                return check_body(net, task, value);
            });
            switch (chk.kind) {
                case UniversalCheck::Kind::Holds:
                    tree_.record(task.scope, EnumStatus::exhaustive());
                    out.universals.emplace_back(task.scope, EnumStatus::exhaustive());
                    break;
                case UniversalCheck::Kind::Counterexample:
                    tree_.record(task.scope, EnumStatus::exhaustive());
                    if (chk.checks < *d.size()) {
                        tree_.mark_stopped_early(task.scope);
                    }
                    return fail();
                case UniversalCheck::Kind::AbortInfinite:
                    tree_.abort_universal(task.scope);
                    tree_.note_cause(UnknownReason::UniversalInfinite);
                    unsure = true;
                    break;
                case UniversalCheck::Kind::BudgetExceeded:
                    tree_.record(task.scope, EnumStatus::incomplete(IncompleteReason::BudgetExhausted));
                    tree_.note_cause(UnknownReason::BudgetExhausted);
                    unsure = true;
                    break;
                case UniversalCheck::Kind::Unknown:
                    tree_.record(task.scope, EnumStatus::exhaustive());
                    unsure = true;
                    break;
            }
        }
        if (unsure) {
            return unknown();
        }
        for (const WitnessEntry& w : net.witness) {
            Int value = net.domain(w.cell).value();
            out.witness.emplace(w.name, value);
            if (!w.pred) {
                out.free.emplace(w.name, value);
            }
            if (w.choice) {
                out.choices[w.pred] = value;
            }
        }
        return out;
    }

    int pick_var(const Network& net) const {
        int best = -1;
        std::tuple<int, int, std::size_t> best_key;
        for (std::size_t i = 0; i < net.decision_vars.size(); ++i) {
            int v = net.decision_vars[i];
            const Domain& d = net.domain(v);
            if (d.is_fixed()) {
                continue;
            }
            // Outer scopes first, then finite domains, then creation order.
            auto key = std::make_tuple(tree_.depth(net.cell(v).scope), d.finite() ? 0 : 1, i);
            if (best < 0 || key < best_key) {
                best = v;
                best_key = key;
            }
        }
        return best;
    }

    /// An undetermined boolean cell the required structure depends on.
    std::optional<CellChoice> pick_cell(const Network& net) const {
        std::vector<int> stack(net.roots.rbegin(), net.roots.rend());
        std::set<int> seen;
        auto fixed_to = [&](int v, Int k) { return net.domain(v).is_fixed() && net.domain(v).value() == k; };
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            if (!seen.insert(c).second) {
                continue;
            }
            const Domain& d = net.domain(c);
            if (!d.is_fixed()) {
                return CellChoice{c, 1};
            }
            int p = net.cell(c).defined_by;
            if (p < 0) {
                continue;
            }
            const Propagator& prop = net.propagators()[p];
            const bool is_and = prop.kind == PropKind::And;
            // The child value that decides this connective on its own.
            const Int decisive = is_and ? 0 : 1;
            if (d.value() == decisive) {
                if (fixed_to(prop.x, decisive)) {
                    stack.push_back(prop.x);
                } else if (fixed_to(prop.y, decisive)) {
                    stack.push_back(prop.y);
                } else {
                    int open = net.domain(prop.x).is_fixed() ? prop.y : prop.x;
                    return CellChoice{open, decisive};
                }
            } else {
                stack.push_back(prop.y);
                stack.push_back(prop.x);
            }
        }
        return std::nullopt;
    }

    Outcome label(const Network& net, int v) {
        ScopeId scope = net.cell(v).scope;
        ExistentialEnumerator en(net.domain(v), cfg_.strategy, key(scope), cfg_.budget, tree_, scope);
        bool unsure = false;
        while (true) {
            if (timed_out()) {
                unsure = true;
                break;
            }
            auto value = en.next();
            if (!value) {
                break;
            }
            Network child = net;
            if (!child.fix(v, *value)) {
                continue;
            }
            Outcome r = dfs(std::move(child));
            if (r.kind == Kind::Found) {
                en.stop_on_success();
                return r;
            }
            if (r.kind == Kind::Unknown) {
                unsure = true;
            }
        }
        if (en.state() != ExistentialEnumerator::State::Exhausted) {
            unsure = true;
        }
        return unsure ? unknown() : fail();
    }

    Outcome branch(const Network& net, CellChoice choice) {
        bool unsure = false;
        for (Int value : {choice.first, 1 - choice.first}) {
            Network child = net;
            if (!child.fix(choice.cell, value)) {
                continue;
            }
            Outcome r = dfs(std::move(child));
            if (r.kind == Kind::Found) {
                return r;
            }
            if (r.kind == Kind::Unknown) {
                unsure = true;
            }
        }
        return unsure ? unknown() : fail();
    }

    /// Over-approximation of the values the quantified variable can take
    /// while the guard of the body holds. The body is `G => H` (or, negated,
    /// `G & H`); without such a guard the range is unbounded.
    Domain guard_domain(const Network& net, const UniversalTask& task) {
        const Pred& body = *task.pred->body();
        const Pred* guard = nullptr;
        if (task.body_pol == Polarity::Pos && body.kind == Pred::Kind::Implies) {
            guard = body.left.get();
        } else if (task.body_pol == Polarity::Neg && body.kind == Pred::Kind::And) {
            guard = body.left.get();
        }
        if (!guard) {
            return Domain::all();
        }
        Network g = net;
        int y = g.new_var(Domain::all(), task.scope, task.pred->var);
        Env env = task.env;
        env[task.pred->var] = y;
        int c = compile(*guard, Polarity::Pos, task.scope, g, env, task.mixed);
        if (!g.fix(c, 1) || g.propagate() == Network::Status::Failed) {
            return Domain::empty();
        }
        return g.domain(y);
    }

    Verdict check_body(const Network& net, const UniversalTask& task, Int value) {
        Network sub = net;
        for (UniversalTask& t : sub.universals) {
            t.done = true;
        }
        sub.roots.clear();
        int y = sub.new_var(Domain::singleton(value), task.scope, task.pred->var);
        Env env = task.env;
        env[task.pred->var] = y;
        int c = compile(*task.pred->body(), task.body_pol, task.scope, sub, env, task.mixed);
        sub.roots.push_back(c);
        if (!sub.fix(c, 1)) {
            return Verdict::Unsat;
        }
        Outcome r = dfs(std::move(sub));
        switch (r.kind) {
            case Kind::Found: return Verdict::Sat;
            case Kind::Fail: return Verdict::Unsat;
            case Kind::Unknown: return Verdict::Unknown;
        }
        return Verdict::Unknown;
    }

    std::optional<Network> shortcut(const Network& net) const {
        if (!ready_without_search(net)) {
            return std::nullopt;
        }
        Network leaf = net;
        for (int v : net.decision_vars) {
            if (!leaf.domain(v).is_fixed() && !leaf.fix(v, first_value(leaf.domain(v)))) {
                return std::nullopt;
            }
        }
        if (leaf.propagate(kLeafRuns) == Network::Status::Failed) {
            return std::nullopt;
        }
        return leaf;
    }

    std::uint64_t key(ScopeId scope) const {
        return mix64(cfg_.strategy.seed ^ mix64(static_cast<std::uint64_t>(scope)));
    }

    ScopeTree& tree() { return tree_; }
    const SolverConfig& config() const { return cfg_; }

private:
    const SolverConfig& cfg_;
    ScopeTree& tree_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    bool timed_out_ = false;
};

/// Ok, or the reason a witness could not be checked. A witness that
/// evaluates to false is a solver bug.
std::optional<UnknownReason> validate(const Pred& p, const Outcome& o) {
    try {
        if (!evaluate_with_choices(p, o.free, o.choices)) {
            throw std::logic_error("solver witness does not satisfy " + to_string(p));
        }
    } catch (const InfiniteQuantifier&) {
        return UnknownReason::UnverifiedWitness;
    }
    return std::nullopt;
}

class AllSearch {
public:
    AllSearch(Search& search, const Pred& p, std::vector<std::pair<std::string, int>> proj)
        : search_(search), pred_(p), proj_(std::move(proj)) {}

    void run(Network net) {
        if (stopped()) {
            return;
        }
        if (search_.timed_out()) {
            give_up(UnknownReason::Timeout);
            return;
        }
        if (!search_.settle(net)) {
            return;
        }
        if (search_.ready_without_search(net) && product_size(net) <= search_.config().budget) {
            emit_product(net);
            return;
        }
        int v = -1;
        for (const auto& entry : proj_) {
            if (!net.domain(entry.second).is_fixed()) {
                v = entry.second;
                break;
            }
        }
        if (v < 0) {
            Outcome r = search_.dfs(std::move(net));
            if (r.kind == Kind::Found) {
                accept(r);
            } else if (r.kind == Kind::Unknown) {
                give_up(classify(search_.tree(), std::nullopt).reason.value_or(UnknownReason::InfiniteDomain));
            }
            return;
        }
        ScopeId scope = net.cell(v).scope;
        if (!net.domain(v).finite()) {
            search_.tree().record(scope, EnumStatus::incomplete(IncompleteReason::InfiniteDomain));
            give_up(UnknownReason::InfiniteDomain);
            return;
        }
        ExistentialEnumerator en(net.domain(v), search_.config().strategy, search_.key(scope),
                                 search_.config().budget, search_.tree(), scope);
        while (!stopped()) {
            auto value = en.next();
            if (!value) {
                break;
            }
            Network child = net;
            if (child.fix(v, *value)) {
                run(std::move(child));
            }
        }
        if (en.state() == ExistentialEnumerator::State::BudgetTripped) {
            give_up(UnknownReason::BudgetExhausted);
        }
    }

    bool complete() const { return !reason_; }
    std::optional<UnknownReason> reason() const { return reason_; }
    std::vector<Assignment> solutions() const { return {found_.begin(), found_.end()}; }

private:
    bool stopped() const { return reason_.has_value(); }

    void give_up(UnknownReason r) {
        if (!reason_) {
            reason_ = r;
        }
    }

    std::uint64_t product_size(const Network& net) const {
        std::uint64_t n = 1;
        for (const auto& entry : proj_) {
            n *= *net.domain(entry.second).size();
            if (n > search_.config().budget) {
                break;
            }
        }
        return n;
    }

    void accept(const Outcome& r) {
        if (auto why = validate(pred_, r)) {
            give_up(*why);
            return;
        }
        Assignment a;
        for (const auto& entry : proj_) {
            a[entry.first] = r.witness.at(entry.first);
        }
        found_.insert(a);
    }

    // Every combination of the projection domains is a solution; the other
    // variables take any value of theirs.
    void emit_product(const Network& net) {
        std::vector<std::vector<Int>> values;
        for (const auto& entry : proj_) {
            values.push_back(net.domain(entry.second).materialize());
        }
        std::vector<std::size_t> idx(values.size(), 0);
        while (true) {
            Network leaf = net;
            bool ok = true;
            for (std::size_t i = 0; i < proj_.size(); ++i) {
                ok = ok && leaf.fix(proj_[i].second, values[i][idx[i]]);
            }
            std::optional<Network> labeled;
            if (ok && search_.settle(leaf)) {
                labeled = search_.shortcut(leaf);
            }
            if (!labeled) {
                throw std::logic_error("entailed domains produced a failing assignment");
            }
            accept(search_.finish(std::move(*labeled)));
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == values[i].size()) {
                idx[i] = 0;
                ++i;
            }
            if (i == idx.size()) {
                break;
            }
        }
    }

    Search& search_;
    const Pred& pred_;
    std::vector<std::pair<std::string, int>> proj_;
    std::set<Assignment> found_;
    std::optional<UnknownReason> reason_;
};

}  // namespace

SolveResult solve(const Pred& p, const SolverConfig& cfg) {
    ScopeTree tree;
    Search search(cfg, tree);
    Outcome r = search.dfs(build_network(p, cfg.rules_enabled));
    if (r.kind != Kind::Found) {
        return classify(tree, std::nullopt);
    }
    if (auto why = validate(p, r)) {
        SolveResult res = classify(tree, std::nullopt);
        res.verdict = Verdict::Unknown;
        res.reason = why;
        return res;
    }
    SolveResult res = classify(tree, r.witness);
    res.accepted_universals = r.universals;
    return res;
}

AllResult solve_all(const Pred& p, const std::vector<std::string>& vars, const SolverConfig& cfg) {
    Network net = build_network(p, cfg.rules_enabled);
    std::vector<std::pair<std::string, int>> proj;
    for (const std::string& name : vars) {
        auto it = std::find_if(net.witness.begin(), net.witness.end(),
                               [&](const WitnessEntry& w) { return !w.pred && w.name == name; });
        if (it == net.witness.end()) {
            throw Error("'" + name + "' is not a free variable of the predicate");
        }
        if (std::none_of(proj.begin(), proj.end(), [&](const auto& e) { return e.first == name; })) {
            proj.emplace_back(name, it->cell);
        }
    }
    ScopeTree tree;
    Search search(cfg, tree);
    AllSearch all(search, p, proj);
    all.run(std::move(net));
    AllResult res;
    res.complete = all.complete();
    res.reason = all.reason();
    if (res.complete) {
        res.solutions = all.solutions();
    }
    res.report = tree.nodes();
    return res;
}

}  // namespace idsolver
