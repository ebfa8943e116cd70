#include "idsolver/cli.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "idsolver/errors.hpp"

namespace idsolver {

namespace {

using Json = nlohmann::ordered_json;

struct RunOutput {
    int code = kExitError;
    std::vector<ScopeNode> report;
};

std::string status_text(const ScopeNode& n) {
    if (n.aborted) {
        return "aborted";
    }
    if (n.status.kind == EnumStatus::Kind::Exhaustive && n.stopped_early) {
        return "exhaustive-capable (stopped early)";
    }
    return to_string(n.status);
}

std::string scope_var(const ScopeNode& n) { return n.var.empty() ? "root" : n.var; }

Json scopes_json(const std::vector<ScopeNode>& report) {
    Json scopes = Json::array();
    for (const ScopeNode& n : report) {
        scopes.push_back({{"kind", to_string(n.kind)},
                          {"var", scope_var(n)},
                          {"status", status_text(n)},
                          {"stopped_early", n.stopped_early}});
    }
    return scopes;
}

std::string assignment_text(const Assignment& a) {
    std::string s;
    for (const auto& [name, value] : a) {
        if (!s.empty()) s += ' ';
        s += name + "=" + std::to_string(value);
    }
    return s;
}

Json assignment_json(const Assignment& a) {
    Json j = Json::object();
    for (const auto& [name, value] : a) {
        j[name] = value;
    }
    return j;
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::Sat: return kExitSat;
        case Verdict::Unsat: return kExitUnsat;
        case Verdict::Unknown: return kExitUnknown;
    }
    return kExitError;
}

// Runs `body`, turning solver and parse errors into exit code 3.
template <typename F>
RunOutput guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return {kExitError, {}};
    }
}

void print_verdict(const SolveResult& r, const char* sat_word, const char* unsat_word, bool json,
                   std::ostream& out) {
    if (json) {
        Json j;
        j["status"] = r.verdict == Verdict::Sat ? sat_word : r.verdict == Verdict::Unsat ? unsat_word : "UNKNOWN";
        if (r.verdict == Verdict::Sat) j["witness"] = assignment_json(r.witness);
        if (r.reason) j["reason"] = to_string(*r.reason);
        j["scopes"] = scopes_json(r.report);
        out << j.dump() << '\n';
        return;
    }
    switch (r.verdict) {
        case Verdict::Sat: {
            std::string w = assignment_text(r.witness);
            out << sat_word << (w.empty() ? "" : " ") << w << '\n';
            break;
        }
        case Verdict::Unsat:
            out << unsat_word << '\n';
            break;
        case Verdict::Unknown:
            out << "UNKNOWN reason=" << (r.reason ? to_string(*r.reason) : "unknown") << '\n';
            break;
    }
    out << format_report(r.report);
}

RunOutput solve_text(const std::string& text, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        PredPtr p = parse(text);
        SolveResult r = solve(*p, cfg.solver);
        print_verdict(r, "SAT", "UNSAT", cfg.json, out);
        return RunOutput{exit_code(r.verdict), r.report};
    });
}

RunOutput all_text(const std::string& text, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        PredPtr p = parse(text);
        std::vector<std::string> vars = cfg.vars;
        if (vars.empty()) {
            vars = free_vars_ordered(*p);
        }
        AllResult r = solve_all(*p, vars, cfg.solver);
        // Sort numerically in the order the variables were requested.
        std::vector<std::vector<Int>> rows;
        for (const Assignment& a : r.solutions) {
            std::vector<Int> row;
            for (const std::string& v : vars) row.push_back(a.at(v));
            rows.push_back(std::move(row));
        }
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        if (cfg.json) {
            Json j;
            j["status"] = r.complete ? "COMPLETE" : "INCOMPLETE";
            if (r.complete) {
                Json sols = Json::array();
                for (const auto& row : rows) {
                    Json s = Json::object();
                    for (std::size_t i = 0; i < vars.size(); ++i) s[vars[i]] = row[i];
                    sols.push_back(s);
                }
                j["solutions"] = sols;
            }
            if (r.reason) j["reason"] = to_string(*r.reason);
            j["scopes"] = scopes_json(r.report);
            out << j.dump() << '\n';
        } else if (r.complete) {
            out << "SOLUTIONS " << rows.size() << '\n';
            for (const auto& row : rows) {
                for (std::size_t i = 0; i < vars.size(); ++i) {
                    out << (i ? " " : "") << vars[i] << '=' << row[i];
                }
                out << '\n';
            }
            out << format_report(r.report);
        } else {
            out << "INCOMPLETE reason=" << to_string(r.reason.value_or(UnknownReason::InfiniteDomain)) << '\n';
            out << format_report(r.report);
        }
        int code = !r.complete ? kExitUnknown : rows.empty() ? kExitUnsat : kExitSat;
        return RunOutput{code, r.report};
    });
}

RunOutput sequent_text(const std::string& goal, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        // A counterexample satisfies every hypothesis and falsifies the goal.
        PredPtr p = Pred::negation(parse(goal));
        for (auto it = cfg.hyps.rbegin(); it != cfg.hyps.rend(); ++it) {
            p = Pred::conj(parse(*it), p);
        }
        SolveResult r = solve(*p, cfg.solver);
        print_verdict(r, "COUNTEREXAMPLE", "PROVED", cfg.json, out);
        return RunOutput{exit_code(r.verdict), r.report};
    });
}

RunOutput dispatch(const std::string& text, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    switch (cfg.mode) {
        case CliMode::Solve: return solve_text(text, cfg, out, err);
        case CliMode::All: return all_text(text, cfg, out, err);
        case CliMode::Sequent: return sequent_text(text, cfg, out, err);
    }
    return {};
}

}  // namespace

std::string format_report(const std::vector<ScopeNode>& report) {
    std::ostringstream os;
    for (const ScopeNode& n : report) {
        os << "scope " << n.id << ' ' << to_string(n.kind) << ' ' << scope_var(n)
           << ": enumeration: " << status_text(n);
        if (n.strategy_fallback) {
            os << " [strategy fallback]";
        }
        os << '\n';
    }
    return os.str();
}

int run_solve(const std::string& text, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return solve_text(text, cfg, out, err).code;
}

int run_all(const std::string& text, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return all_text(text, cfg, out, err).code;
}

int run_sequent(const std::string& goal, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return sequent_text(goal, cfg, out, err).code;
}

int run(const std::string& text, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return dispatch(text, cfg, out, err).code;
}

int repl(std::istream& in, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<ScopeNode> last;
    int code = kExitSat;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::string cmd = line.substr(first);
        while (!cmd.empty() && (cmd.back() == ' ' || cmd.back() == '\r' || cmd.back() == '\t')) {
            cmd.pop_back();
        }
        if (cmd == ":quit" || cmd == ":q") {
            break;
        }
        if (cmd == ":enum") {
            out << format_report(last);
            continue;
        }
        if (cmd == ":help") {
            out << "enter a predicate, :enum for the last enumeration report, :quit to leave\n";
            continue;
        }
        RunOutput r = dispatch(cmd, cfg, out, err);
        code = r.code;
        last = std::move(r.report);
    }
    return code;
}

}  // namespace idsolver
