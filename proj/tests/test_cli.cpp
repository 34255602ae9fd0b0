#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "ldpgc/cli.hpp"

using namespace ldpgc;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::vector<const char*> argv{"ldpgc"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("exact subcommand prints oracle counts") {
    auto r = run_cli({"exact", "--graph", "er:20:0.3", "--seed", "1", "--pattern",
                      "path:3", "--distinct"});
    CHECK(r.code == 0);
    CHECK(!r.out.empty());
    // deterministic under the seed
    auto again = run_cli({"exact", "--graph", "er:20:0.3", "--seed", "1", "--pattern",
                          "path:3", "--distinct"});
    CHECK(again.out == r.out);
}

TEST_CASE("usage errors exit with 2 and name the problem") {
    auto r = run_cli({"run", "--graph", "er:10:0.5", "--mech", "warp", "--k", "3"});
    CHECK(r.code == 2);
    CHECK(r.err.find("warp") != std::string::npos);

    auto missing = run_cli({"run", "--graph", "er:10:0.5"});
    CHECK(missing.code == 2);

    auto badgraph = run_cli({"exact", "--graph", "er:10", "--pattern", "path:2"});
    CHECK(badgraph.code == 2);
    CHECK(badgraph.err.find("er:") != std::string::npos);
}

TEST_CASE("size guards exit with 3") {
    auto r = run_cli({"exact", "--graph", "er:500:0.5", "--seed", "1", "--pattern",
                      "path:6"});
    CHECK(r.code == 3);
}

TEST_CASE("io errors exit with 4") {
    auto r = run_cli({"run", "--graph", "file:/nonexistent/edges.txt", "--mech",
                      "walk-opt", "--k", "3", "--eps", "1"});
    CHECK(r.code == 4);
    CHECK(r.err.find("edges.txt") != std::string::npos);
}

TEST_CASE("run subcommand reports a summary deterministically") {
    std::vector<std::string> args{"run",   "--graph", "er:60:0.1", "--mech",
                                  "path",  "--k",     "3",         "--eps",
                                  "1",     "--trials", "5",        "--seed",
                                  "12"};
    auto a = run_cli(args);
    auto b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("estimate mean") != std::string::npos);
    CHECK(a.out.find("comm bytes") != std::string::npos);
}

TEST_CASE("noiseless star run is exact") {
    auto r = run_cli({"run", "--graph", "er:30:0.2", "--mech", "star", "--k", "3",
                      "--eps", "1", "--trials", "1", "--seed", "4", "--noiseless",
                      "--distinct"});
    CHECK(r.code == 0);
    CHECK(r.out.find("rel err") != std::string::npos);
    CHECK(r.out.find("rel err: 0%") != std::string::npos);
}

TEST_CASE("transcript subcommand dumps rounds") {
    auto r = run_cli({"transcript", "--graph", "er:12:0.4", "--mech", "path", "--k",
                      "3", "--eps", "1", "--seed", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("marks") != std::string::npos);
    CHECK(r.out.find("max") != std::string::npos);
}

TEST_CASE("bench subcommand consumes a plan file") {
    std::string plan_path = "ldpgc_cli_plan.txt";
    {
        std::ofstream f(plan_path);
        f << "dataset er:40:0.15\nseed 3\ntrials 2\neps 1.0\n"
          << "query star star:2 distinct\n";
    }
    auto r = run_cli({"bench", "--plan", plan_path});
    CHECK(r.code == 0);
    CHECK(r.out.find("dataset,query,mechanism") != std::string::npos);
    CHECK(r.out.find("star:2") != std::string::npos);
    std::remove(plan_path.c_str());

    auto missing = run_cli({"bench", "--plan", "no_such_plan.txt"});
    CHECK(missing.code == 4);
}

TEST_CASE("compare-trees emits one row per root") {
    auto r = run_cli({"compare-trees", "--graph", "er:50:0.1", "--pattern", "path:4",
                      "--roots", "0,2", "--eps", "1", "--trials", "2", "--seed", "8"});
    CHECK(r.code == 0);
    CHECK(r.out.find("root=0") != std::string::npos);
    CHECK(r.out.find("root=2") != std::string::npos);
}
