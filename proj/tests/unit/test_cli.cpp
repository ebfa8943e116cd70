#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "idsolver/cli.hpp"

using namespace idsolver;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(const std::string& text, CliConfig cfg = {}) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run(text, cfg, out, err);
    return {code, out.str(), err.str()};
}

CliConfig mode(CliMode m) {
    CliConfig cfg;
    cfg.mode = m;
    return cfg;
}

}  // namespace

TEST_CASE("solve mode") {
    Run a = run_cli("x in -10..10 & x > 0");
    CHECK(a.code == kExitSat);
    CHECK(a.out == "SAT x=1\nscope 0 exists root: enumeration: exhaustive-capable (stopped early)\n");
    Run b = run_cli("x*x = 10001");
    CHECK(b.code == kExitUnsat);
    CHECK(b.out == "UNSAT\nscope 0 exists root: enumeration: none\n");
    Run c = run_cli("x > 10000 & x mod 1234 = 1 & x*x = 10*x");
    CHECK(c.code == kExitUnknown);
    CHECK(c.out.rfind("UNKNOWN reason=budget\n", 0) == 0);
    Run d = run_cli("x >");
    CHECK(d.code == kExitError);
    CHECK(d.err.rfind("error: ", 0) == 0);
}

TEST_CASE("all mode") {
    Run a = run_cli("x*x = 10000", mode(CliMode::All));
    CHECK(a.code == kExitSat);
    CHECK(a.out.rfind("SOLUTIONS 2\nx=-100\nx=100\n", 0) == 0);
    Run b = run_cli("x > 10000 & x mod 1234 = 1", mode(CliMode::All));
    CHECK(b.code == kExitUnknown);
    CHECK(b.out.rfind("INCOMPLETE reason=infinite_domain\n", 0) == 0);
    Run c = run_cli("x in 1..3", mode(CliMode::All));
    CHECK(c.out.rfind("SOLUTIONS 3\nx=1\nx=2\nx=3\n", 0) == 0);
    Run d = run_cli("x in 1..3 & x > 5", mode(CliMode::All));
    CHECK(d.code == kExitUnsat);
    CHECK(d.out.rfind("SOLUTIONS 0\n", 0) == 0);
}

TEST_CASE("sequent mode") {
    CliConfig cfg = mode(CliMode::Sequent);
    cfg.hyps = {"x in 0..10"};
    Run a = run_cli("x >= 0", cfg);
    CHECK(a.out.rfind("PROVED\n", 0) == 0);
    Run b = run_cli("x > 0", cfg);
    CHECK(b.out.rfind("COUNTEREXAMPLE x=0\n", 0) == 0);
    cfg.hyps = {"x > 0"};
    Run c = run_cli("x*x > x", cfg);
    CHECK(c.out.rfind("COUNTEREXAMPLE x=1\n", 0) == 0);
}

TEST_CASE("json output") {
    CliConfig cfg;
    cfg.json = true;
    Run a = run_cli("x in -10..10 & x > 0", cfg);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["status"] == "SAT");
    CHECK(j["witness"]["x"] == 1);
    REQUIRE(j["scopes"].size() == 1);
    CHECK(j["scopes"][0]["kind"] == "exists");
    CHECK(j["scopes"][0]["stopped_early"] == true);
    Run b = run_cli("x > 10000 & x mod 1234 = 1 & x*x = 10*x", cfg);
    auto k = nlohmann::json::parse(b.out);
    CHECK(k["status"] == "UNKNOWN");
    CHECK(k["reason"] == "budget");
    CHECK_FALSE(k.contains("witness"));
}

TEST_CASE("interactive session") {
    std::istringstream in("# comment\nx*x = 10001\n:enum\n\nx in 1..2 & x > 1\n:quit\nx = 1\n");
    std::ostringstream out;
    std::ostringstream err;
    int code = repl(in, CliConfig{}, out, err);
    CHECK(code == kExitSat);
    CHECK(out.str() ==
          "UNSAT\nscope 0 exists root: enumeration: none\n"
          "scope 0 exists root: enumeration: none\n"
          "SAT x=2\nscope 0 exists root: enumeration: none\n");
}
