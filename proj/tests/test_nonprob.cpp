#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adp/nonprob.hpp"
#include "adp/prover.hpp"
#include "helpers.hpp"

using namespace adp;
using namespace adp::testing;

namespace {
const std::set<std::string> V{"x", "y"};
}

TEST_CASE("size-decreasing pair terminates") {
  DPProblem d;
  d.pairs.emplace_back(tparse("loop2#(s(y))", V), tparse("loop2#(y)", V));
  d.strategy = Strategy::full;
  SolveConfig cfg;
  nlohmann::json cert;
  CHECK(dp_terminates(d, cfg, &cert) == DpResult::terminating);
  CHECK(dp_certificate_valid(d, cert));
}

TEST_CASE("self-feeding pair stays unknown") {
  // F(x) -> F(a) with a -> a admits the chain F(a) -> F(a)
  DPProblem d;
  d.pairs.emplace_back(tparse("f#(x)", V), tparse("f#(a)"));
  d.rules.emplace_back(tparse("a"), tparse("a"));
  d.strategy = Strategy::full;
  SolveConfig cfg;
  CHECK(dp_terminates(d, cfg) == DpResult::unknown);
}

TEST_CASE("empty pair set terminates") {
  DPProblem d;
  d.rules.emplace_back(tparse("a"), tparse("a"));
  SolveConfig cfg;
  nlohmann::json cert;
  CHECK(dp_terminates(d, cfg, &cert) == DpResult::terminating);
  CHECK(dp_certificate_valid(d, cert));
}

TEST_CASE("innermost estimation prunes never-innermost chains") {
  // the nested-d pair cannot follow itself innermost (its redex is never in
  // argument normal form), but it can under full rewriting
  DPProblem d;
  d.pairs.emplace_back(tparse("d#(d(x))", V), tparse("d#(d(d(x)))", V));
  d.rules.emplace_back(tparse("d(x)", V), tparse("0"));
  SolveConfig cfg;
  d.strategy = Strategy::innermost;
  CHECK(dp_terminates(d, cfg) == DpResult::terminating);
  d.strategy = Strategy::full;
  CHECK(dp_terminates(d, cfg) == DpResult::unknown);
}

TEST_CASE("corrupted certificates are rejected") {
  DPProblem d;
  d.pairs.emplace_back(tparse("loop2#(s(y))", V), tparse("loop2#(y)", V));
  SolveConfig cfg;
  nlohmann::json cert;
  REQUIRE(dp_terminates(d, cfg, &cert) == DpResult::terminating);
  nlohmann::json broken = cert;
  // walk to the reduction step and blank the interpretation
  std::function<bool(nlohmann::json&)> blank = [&](nlohmann::json& n) -> bool {
    if (n.at("kind") == "reduction") {
      n["interpretation"] = nlohmann::json::array();
      return true;
    }
    if (n.contains("children"))
      for (auto& c : n.at("children"))
        if (blank(c)) return true;
    if (n.contains("child")) return blank(n.at("child"));
    return false;
  };
  REQUIRE(blank(broken));
  std::string why;
  CHECK(!dp_certificate_valid(d, broken, &why));
  CHECK(!why.empty());
}

TEST_CASE("probability removal agrees with the direct pipeline") {
  // singleton-distribution systems decided by both routes
  std::vector<std::string> sources = {
      "(VAR y) (RULES loop2(s(y)) -> { 1 : loop2(y) })",
      "(VAR y) (RULES double(s(y)) -> { 1 : s(s(double(y))) } double(0) -> { 1 : 0 })",
      "(VAR x y) (RULES plus(0,y) -> { 1 : y } plus(s(x),y) -> { 1 : s(plus(x,y)) })",
      "(VAR x xs ys) (RULES app(cons(x,xs),ys) -> { 1 : cons(x,app(xs,ys)) }"
      " app(nil,ys) -> { 1 : ys } app(xs,nil) -> { 1 : xs })",
  };
  for (const std::string& src : sources) {
    PTRS r = parse_ptrs(src);
    ADPProblem p = canonical_adps(r, Goal::ast);
    SolveConfig cfg;
    DpResult direct = dp_terminates(dp_problem_of(p), cfg);
    ProverConfig pcfg;
    pcfg.timeout_seconds = 30;
    auto pipeline = solve_problem(p, pcfg,
                                  std::chrono::steady_clock::now() + std::chrono::seconds(30));
    CHECK(direct == DpResult::terminating);
    CHECK(pipeline.has_value());
  }
}

TEST_CASE("export format") {
  DPProblem d;
  d.pairs.emplace_back(tparse("loop2#(s(y))", V), tparse("loop2#(y)", V));
  d.rules.emplace_back(tparse("a"), tparse("b"));
  std::string text = export_dp_problem(d);
  CHECK(text.find("(PAIRS") != std::string::npos);
  CHECK(text.find("loop2#(s(y)) -> loop2#(y)") != std::string::npos);
  CHECK(text.find("(RULES") != std::string::npos);
  CHECK(text.find("(STRATEGY full)") != std::string::npos);
}
