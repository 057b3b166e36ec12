#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adp/parser.hpp"
#include "helpers.hpp"

using namespace adp;
using adp::testing::tparse;

TEST_CASE("parse basic systems") {
  PTRS p = parse_ptrs("(VAR x) (RULES g -> { 3/4 : d(g), 1/4 : 0 } )");
  REQUIRE(p.rules.size() == 1);
  CHECK(p.rules[0].lhs == tparse("g"));
  CHECK(p.rules[0].rhs.branches[0].first == Rational(3, 4));
  CHECK(p.rules[0].rhs.branches[0].second == tparse("d(g)"));
  CHECK(p.rules[0].rhs.branches[1].first == Rational(1, 4));
  CHECK(defined_symbols(p) == std::set<std::string>{"g"});

  PTRS q = parse_ptrs("(RULES a -> { 1 : a })");
  REQUIRE(q.rules.size() == 1);
  CHECK(q.rules[0].rhs.branches.size() == 1);
}

TEST_CASE("comments, START, VAR after RULES") {
  PTRS p = parse_ptrs("; header\n(RULES f(x) -> { 1 : x }) ; tail\n(VAR x)\n(START f(c))\n");
  REQUIRE(p.rules.size() == 1);
  CHECK(p.rules[0].lhs == tparse("f(x)", {"x"}));
  REQUIRE(p.start);
  CHECK(*p.start == tparse("f(c)"));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(parse_ptrs("(RULES a -> { 1/2 : x })"), ParseError);  // bad sum + free var
  CHECK_THROWS_AS(parse_ptrs("(RULES a -> { 1/2 : b })"), ParseError);  // sum != 1
  CHECK_THROWS_AS(parse_ptrs("(VAR x x) (RULES a -> { 1 : b })"), ParseError);
  CHECK_THROWS_AS(parse_ptrs("(RULES f(a) -> { 1 : f(a,a) })"), ParseError);  // arity clash
  CHECK_THROWS_AS(parse_ptrs("(VAR x)"), ParseError);                         // no RULES
  CHECK_THROWS_AS(parse_ptrs("(RULES a -> { 1 : b }) (RULES b -> { 1 : a })"), ParseError);
  CHECK_THROWS_AS(parse_ptrs("(RULES a -> )"), ParseError);
  try {
    parse_ptrs("(RULES\n  a -> { 1 : b }\n  % )");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 3);  // positions point at the offending token
  }
}

TEST_CASE("print/parse round trips") {
  for (std::string name :
       {"r1", "r2", "r3", "r_alg", "p_g", "list_sum", "list_sum_even", "tree_lessleaves"}) {
    PTRS p = testing::load(name);
    std::string printed = print_ptrs(p);
    PTRS q = parse_ptrs(printed);
    CHECK(print_ptrs(q) == printed);  // parse . print = identity
    REQUIRE(q.rules.size() == p.rules.size());
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
      CHECK(q.rules[i].lhs == p.rules[i].lhs);
      CHECK(q.rules[i].rhs.branches == p.rules[i].rhs.branches);
    }
    CHECK(q.start == p.start);
  }
}
