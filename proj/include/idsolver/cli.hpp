#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "idsolver/engine.hpp"

namespace idsolver {

enum class CliMode { Solve, All, Sequent };

struct CliConfig {
    CliMode mode = CliMode::Solve;
    SolverConfig solver;
    bool json = false;
    std::vector<std::string> vars;  // all mode
    std::vector<std::string> hyps;  // sequent mode
};

/// Exit codes shared by every mode.
enum ExitCode : int { kExitSat = 0, kExitUnsat = 1, kExitUnknown = 2, kExitError = 3 };

/// Per-scope enumeration lines, one per scope in id order:
///   scope 0 exists root: enumeration: exhaustive-capable (stopped early)
std::string format_report(const std::vector<ScopeNode>& report);

int run_solve(const std::string& text, const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_all(const std::string& text, const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_sequent(const std::string& goal, const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatches on cfg.mode.
int run(const std::string& text, const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// Line-oriented session: each line is solved in the configured mode.
/// `:enum` reprints the last enumeration report, `:quit` ends the session.
int repl(std::istream& in, const CliConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace idsolver
