#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dblie/cli.hpp"

using namespace dblie;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("bracket eval matches the divided difference") {
    auto r = run({"bracket", "eval", "L2", "3", "1"});
    CHECK(r.code == exit_pass);
    CHECK(r.out == "-t^1(x)t^2 - t^2(x)t^1\n");
    CHECK(run({"bracket", "eval", "L1", "0", "0"}).out == "0\n");
    CHECK(run({"bracket", "eval", "L1", "1", "0"}).out == "0\n");
    CHECK(run({"bracket", "eval", "L1", "1", "1"}).out == "-t^0(x)t^1 + t^1(x)t^0\n");
    // <<t, t + 1>> = <<t, t>> + <<t, 1>> and <<t, 1>> = 0
    CHECK(run({"bracket", "eval", "L1", "t", "t + 1"}).out == "-t^0(x)t^1 + t^1(x)t^0\n");
  }

  TEST_CASE("verify operator and bracket") {
    auto r = run({"verify", "r2", "--window", "6", "--cutoff", "12"});
    CHECK(r.code == exit_pass);
    CHECK(r.out.find("PASS rb_identity r2 [window=6 cutoff=12") != std::string::npos);
    CHECK(r.out.find("PASS skew_symmetry r2") != std::string::npos);
    auto b = run({"verify", "L3", "--window", "4"});
    CHECK(b.code == exit_pass);
    CHECK(b.out.find("PASS jacobi L3") != std::string::npos);
  }

  TEST_CASE("failing checks exit 1 with a counterexample") {
    auto r = run({"--format", "jsonl", "verify", "L2", "--leibniz", "--window", "3"});
    CHECK(r.code == exit_fail);
    CHECK(r.out.find("\"check\":\"leibniz\"") != std::string::npos);
    CHECK(r.out.find("\"status\":\"fail\",\"counterexample\":") != std::string::npos);
  }

  TEST_CASE("structured output records the seed and is deterministic") {
    std::vector<std::string> args{"--format", "jsonl", "--rng-seed", "7", "simplicity", "L2", "--window", "8", "--seeds", "5"};
    auto a = run(args);
    auto b = run(args);
    CHECK(a.code == exit_pass);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"seed\":7") != std::string::npos);
    CHECK(a.out.find("elapsed_ms") == std::string::npos);
    args.insert(args.begin(), "--timing");
    CHECK(run(args).out.find("elapsed_ms") != std::string::npos);
  }

  TEST_CASE("defaults: window 8, cutoff twice the window") {
    auto r = run({"verify", "r1"});
    CHECK(r.out.find("[window=8 cutoff=16") != std::string::npos);
  }

  TEST_CASE("input errors exit 2") {
    CHECK(run({"verify", "no_such_thing"}).code == exit_input);
    CHECK(run({"bracket", "eval", "L2", "q", "1"}).code == exit_input);
    CHECK(run({"verify", "r1", "--window", "5", "--cutoff", "3"}).code == exit_input);
    CHECK(run({"frobnicate"}).code == exit_input);
    CHECK(run({}).code == exit_input);
    CHECK(run({"verify", "--operator-file", "/nonexistent/file"}).code == exit_input);
  }

  TEST_CASE("budget exhaustion exits 3") {
    auto r = run({"ideal", "closure", "L2", "--seed", "t^5", "--window", "12", "--budget", "2"});
    CHECK(r.code == exit_budget);
    CHECK(r.out.rfind("BUDGET ideal_closure L2", 0) == 0);
  }

  TEST_CASE("ideal closure of a one-dimensional ideal") {
    auto r = run({"ideal", "closure", "ex1", "--seed", "e_2", "--window", "0"});
    CHECK(r.code == exit_pass);
    CHECK(r.out.find("note: span{e_2}\n") != std::string::npos);
  }

  TEST_CASE("single RB instance replays a pair") {
    auto r = run({"verify", "r1", "--pair", "2,0;0,3"});
    CHECK(r.code == exit_pass);
    CHECK(r.out.find("x = e_{2,0}, y = e_{0,3}") != std::string::npos);
    CHECK(run({"verify", "r1", "--pair", "2,0"}).code == exit_input);
  }

  TEST_CASE("module check and catalog list") {
    auto m = run({"module", "check", "L3:tF[t]", "--window", "5"});
    CHECK(m.code == exit_pass);
    auto bad = run({"module", "check", "L4:t^2F[t]", "--window", "5"});
    CHECK(bad.code == exit_fail);
    auto c = run({"catalog", "list"});
    CHECK(c.out.find("operators: r1 r2") == 0);
    CHECK(c.out.find("brackets: L1") != std::string::npos);
  }

  TEST_CASE("custom bracket file") {
    std::string path = "cli_test_bracket.txt";
    std::ofstream(path) << "# two-dimensional example\ncarrier finite 2\ne_1, e_2 -> e_2(x)e_2\ne_2, e_1 -> -e_2(x)e_2\n";
    auto r = run({"verify", "--bracket-file", path, "--window", "0"});
    CHECK(r.code == exit_pass);
    CHECK(r.out.find("PASS jacobi") != std::string::npos);
    std::remove(path.c_str());
  }
}
