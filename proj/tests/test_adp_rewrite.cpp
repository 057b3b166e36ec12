#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adp/rewrite.hpp"
#include "helpers.hpp"

using namespace adp;
using namespace adp::testing;

namespace {
const std::set<std::string> V{"x", "y"};

bool has_result(const std::vector<StepOutcome>& steps,
                const std::vector<std::pair<Rational, Term>>& expect) {
  for (const StepOutcome& s : steps)
    if (s.result == expect) return true;
  return false;
}
}  // namespace

TEST_CASE("canonical ADP construction") {
  ADPProblem p2 = canonical_adps(r2(), Goal::iast);
  REQUIRE(p2.adps.size() == 2);
  CHECK(p2.adps[0].lhs == tparse("g"));
  CHECK(p2.adps[0].branches[0].second == tparse("d#(g#)"));
  CHECK(p2.adps[0].branches[1].second == tparse("0"));
  CHECK(p2.adps[0].flag);
  CHECK(p2.adps[1].branches[0].second == tparse("c(x,x)", V));

  ADPProblem pa = canonical_adps(r_alg(), Goal::ast);
  REQUIRE(pa.adps.size() == 7);
  CHECK(pa.adps[0].branches[0].second == tparse("loop1#(double#(y))", V));
  CHECK(pa.adps[0].branches[1].second == tparse("loop2#(double#(y))", V));
  CHECK(pa.adps[3].branches[0].second == tparse("s(s(double#(y)))", V));

  // constructor-only right-hand sides stay unannotated
  PTRS c = make_ptrs({PRule{tparse("f(x)", V), {{{Rational(1), tparse("c(x,x)", V)}}}}});
  CHECK(!canonical_adps(c, Goal::ast).adps[0].annotated());
}

TEST_CASE("np and dp") {
  ADPProblem p2 = canonical_adps(r2(), Goal::iast);
  auto rules = np(p2);
  REQUIRE(rules.size() == 3);
  CHECK(rules[0] == std::pair{tparse("g"), tparse("d(g)")});
  CHECK(rules[2] == std::pair{tparse("d(x)", V), tparse("c(x,x)", V)});

  // flag-false ADPs vanish from np
  ADPProblem off = p2;
  for (ADP& a : off.adps) a.flag = false;
  CHECK(np(off).empty());

  ADPProblem mix;
  mix.goal = Goal::ast;
  mix.strategy = Strategy::full;
  mix.adps.push_back({tparse("a"), {{Rational(1), tparse("b")}}, true});
  mix.adps.push_back({tparse("d(x)", V), {{Rational(1), tparse("c(x,d#(x))", V)}}, true});
  auto npr = np(mix);
  REQUIRE(npr.size() == 2);
  CHECK(npr[1].second == tparse("c(x,d(x))", V));

  auto pairs = dp(mix);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0] == std::pair{tparse("d#(x)", V), tparse("d#(x)", V)});

  ADPProblem l2;
  l2.goal = Goal::ast;
  l2.strategy = Strategy::full;
  l2.adps.push_back({tparse("loop2(s(y))", V), {{Rational(1), tparse("loop2#(y)", V)}}, true});
  auto p = dp(l2);
  REQUIRE(p.size() == 1);
  CHECK(p[0] == std::pair{tparse("loop2#(s(y))", V), tparse("loop2#(y)", V)});

  CHECK(dp(ADPProblem{{{tparse("a"), {{Rational(1), tparse("b")}}, true}},
                      Goal::ast,
                      Strategy::full,
                      {}})
            .empty());
  CHECK_THROWS(dp(canonical_adps(r2(), Goal::iast)));  // two-branch distribution
}

TEST_CASE("np of canonical ADPs flattens back to the rules") {
  for (std::string name : {"r1", "r2", "r3", "r_alg", "list_sum", "tree_lessleaves"}) {
    PTRS r = load(name);
    auto rules = np(canonical_adps(r, Goal::ast));
    std::vector<std::pair<Term, Term>> expect;
    for (const PRule& rule : r.rules)
      for (const auto& [p, t] : rule.rhs.branches) {
        (void)p;
        if (std::find(expect.begin(), expect.end(), std::pair{rule.lhs, t}) == expect.end())
          expect.emplace_back(rule.lhs, t);
      }
    CHECK(rules == expect);
  }
}

TEST_CASE("anf") {
  ADPProblem p2 = canonical_adps(r2(), Goal::iast);
  CHECK(anf(tparse("0"), p2));
  CHECK(anf(tparse("d(0)"), p2));
  CHECK(!anf(tparse("d(g)"), p2));
}

TEST_CASE("innermost rewriting cases") {
  ADPProblem p3 = canonical_adps(r3(), Goal::iast);

  // (at) below the root
  auto steps = adp_rewrite_innermost(tparse("d#(g#)"), p3);
  CHECK(has_result(steps, {{Rational(3, 4), tparse("d#(d#(g#))")},
                           {Rational(1, 4), tparse("d#(0)")}}));

  // (nt): rewriting an unannotated redex keeps the context annotation
  auto steps2 = adp_rewrite_innermost(tparse("d#(g)"), p3);
  CHECK(has_result(steps2, {{Rational(3, 4), tparse("d#(d(g))")},
                            {Rational(1, 4), tparse("d#(0)")}}));

  // (af): a false flag strips annotations above the redex
  ADPProblem pf = p3;
  pf.adps[0].flag = false;
  auto steps3 = adp_rewrite_innermost(tparse("d#(g#)"), pf);
  CHECK(has_result(steps3, {{Rational(3, 4), tparse("d(d#(g#))")},
                            {Rational(1, 4), tparse("d(0)")}}));

  // innermost blocks the nested-d rule: its redex is never in argument NF
  for (const StepOutcome& s : adp_rewrite_innermost(tparse("d#(d#(g))"), p3))
    CHECK(s.adp_index != 1);
}

TEST_CASE("full rewriting with VRFs") {
  ADPProblem p3 = canonical_adps(r3(), Goal::ast);

  // rewriting above an annotation: the greedy VRF repositions x and keeps
  // the instantiated annotation
  auto steps = adp_rewrite_full(tparse("d#(d#(g#))"), p3, false);
  CHECK(has_result(steps, {{Rational(1), tparse("c(g#,g#)")}}));

  // enumerating VRFs also yields the bottom choice that drops it
  auto all = adp_rewrite_full(tparse("d#(d#(g#))"), p3, false, {true, 64});
  CHECK(has_result(all, {{Rational(1), tparse("c(g,g#)")}}));

  // without (nf), flag-false ADPs cannot fire at unannotated positions
  ADPProblem off = p3;
  for (ADP& a : off.adps) a.flag = false;
  CHECK(adp_rewrite_full(tparse("d(d(g))"), off, false).empty());
  CHECK(!adp_rewrite_full(tparse("d(d(g))"), off, true).empty());
}

TEST_CASE("duplicating ADPs cannot duplicate annotations") {
  ADPProblem p2 = canonical_adps(r2(), Goal::ast);
  for (const StepOutcome& s : adp_rewrite_full(tparse("d#(g#)"), p2, false, {true, 64}))
    if (s.adp_index == 1)
      for (const auto& [prob, t] : s.result) {
        (void)prob;
        CHECK(count_annotations(t) <= 1);
      }
}

TEST_CASE("VRF enumeration shapes") {
  ADP dup{tparse("d(x)", V), {{Rational(1), tparse("c(x,x)", V)}}, true};
  // x -> bottom, x -> 1, x -> 2
  CHECK(enumerate_vrfs(dup, 64).size() == 3);
  Vrf g = greedy_vrf(dup);
  REQUIRE(g.per_branch.size() == 1);
  CHECK(g.per_branch[0].at(Position{1}) == Position{1});

  ADP drop{tparse("d(d(x))", V), {{Rational(1), tparse("c(x,g)", V)}}, true};
  Vrf g2 = greedy_vrf(drop);
  CHECK(g2.per_branch[0].at(Position{1, 1}) == Position{1});
}
