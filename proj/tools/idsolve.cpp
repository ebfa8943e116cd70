#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "idsolver/cli.hpp"

namespace {

std::vector<std::string> split_vars(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) {
            out.push_back(item.substr(b, e - b + 1));
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace idsolver;

    CLI::App app{"Quantified integer constraint solver with sound three-valued verdicts"};

    std::string predicate;
    std::string file;
    std::string mode = "solve";
    std::string vars;
    std::vector<std::string> hyps;
    std::string chr = "on";
    bool random_enum = false;
    std::string strategy = "alternating";
    std::uint64_t seed = 0;
    std::uint64_t budget = 10000;
    std::int64_t timeout_ms = 0;
    bool json = false;

    app.add_option("predicate", predicate, "Predicate to solve (the goal in sequent mode)");
    app.add_option("--file", file, "Read the predicate from a file")->check(CLI::ExistingFile);
    app.add_option("--mode", mode, "solve, all or sequent")
        ->check(CLI::IsMember({"solve", "all", "sequent"}));
    app.add_option("--vars", vars, "Projection variables for all mode, comma separated");
    app.add_option("--hyp", hyps, "Sequent hypothesis (repeatable)")->allow_extra_args(false);
    app.add_option("--chr", chr, "Difference-constraint rules: on or off")->check(CLI::IsMember({"on", "off"}));
    app.add_flag("--random-enum", random_enum, "Enumerate values in a seeded random order");
    app.add_option("--strategy", strategy, "alternating, up, down or random")
        ->check(CLI::IsMember({"alternating", "up", "down", "random"}));
    app.add_option("--seed", seed, "Seed for random enumeration");
    app.add_option("--budget", budget, "Value trials per enumeration")->check(CLI::PositiveNumber);
    app.add_option("--timeout-ms", timeout_ms, "Wall-clock limit; gives UNKNOWN reason=timeout")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--json", json, "Print a JSON object instead of text");

    CLI11_PARSE(app, argc, argv);

    CliConfig cfg;
    cfg.mode = mode == "all" ? CliMode::All : mode == "sequent" ? CliMode::Sequent : CliMode::Solve;
    cfg.json = json;
    cfg.vars = split_vars(vars);
    cfg.hyps = hyps;
    cfg.solver.budget = budget;
    cfg.solver.rules_enabled = chr == "on";
    cfg.solver.strategy.kind = random_enum ? StrategyKind::RandomPermutation : *parse_strategy(strategy);
    cfg.solver.strategy.seed = seed;
    if (timeout_ms > 0) {
        cfg.solver.timeout = std::chrono::milliseconds(timeout_ms);
    }

    if (!file.empty()) {
        std::ifstream in(file);
        std::stringstream buf;
        buf << in.rdbuf();
        predicate = buf.str();
    }
    if (predicate.empty()) {
        return repl(std::cin, cfg, std::cout, std::cerr);
    }
    return run(predicate, cfg, std::cout, std::cerr);
}
