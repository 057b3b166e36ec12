#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adp/ptrs.hpp"
#include "helpers.hpp"

using namespace adp;
using namespace adp::testing;

TEST_CASE("split_signature") {
  auto [cons, defd] = split_signature(r2());
  std::set<std::string> c, d;
  for (const Symbol& s : cons) c.insert(s.name);
  for (const Symbol& s : defd) d.insert(s.name);
  CHECK(c == std::set<std::string>{"c", "0"});
  CHECK(d == std::set<std::string>{"g", "d"});

  auto [ca, da] = split_signature(r_alg());
  std::set<std::string> cs, ds;
  for (const Symbol& s : ca) cs.insert(s.name);
  for (const Symbol& s : da) ds.insert(s.name);
  CHECK(ds == std::set<std::string>{"loop1", "loop2", "double", "triple"});
  CHECK(cs == std::set<std::string>{"s", "0"});

  PTRS empty = make_ptrs({});
  CHECK(defined_symbols(empty).empty());
}

TEST_CASE("linearity and duplication") {
  std::set<std::string> v{"x"};
  PTRS rd = make_ptrs({PRule{tparse("d(x)", v), {{{Rational(1), tparse("c(x,x)", v)}}}}});
  CHECK(is_left_linear(rd));
  CHECK(!is_right_linear(rd));
  CHECK(!is_non_duplicating(rd));

  CHECK(is_non_duplicating(r_alg()));
  CHECK(is_non_duplicating(r3()));
  CHECK(!is_non_duplicating(r2()));

  PTRS empty = make_ptrs({});
  CHECK(is_left_linear(empty));
  CHECK(is_right_linear(empty));
  CHECK(is_non_duplicating(empty));
}

TEST_CASE("overlap") {
  std::set<std::string> v{"x"};
  PTRS rd = make_ptrs({PRule{tparse("d(x)", v), {{{Rational(1), tparse("c(x,x)", v)}}}}});
  CHECK(is_non_overlapping(rd));
  CHECK(!is_non_overlapping(r_alg()));  // the two loop1 rules
  CHECK(!is_non_overlapping(r3()));     // d(x) vs d(d(x)) at the root
  CHECK(is_non_overlapping(r2()));
  CHECK(is_non_overlapping(r1()));
}

TEST_CASE("is_basic") {
  CHECK(is_basic(tparse("g"), r2()));
  CHECK(!is_basic(tparse("d(g)"), r2()));
  CHECK(!is_basic(tparse("0"), r2()));
  CHECK(is_basic(tparse("loop1(s(0))"), r_alg()));
  CHECK(is_basic(tparse("loop1(y)", {"y"}), r_alg()));
  CHECK(!is_basic(tparse("loop1(double(y))", {"y"}), r_alg()));
}

TEST_CASE("weak spareness") {
  CHECK(is_weakly_spare_sufficient(r_alg()) == SpareAnswer::yes);  // non-duplicating
  CHECK(is_weakly_spare_sufficient(r3()) == SpareAnswer::yes);
  CHECK(is_weakly_spare_sufficient(r2()) == SpareAnswer::unknown);
  CHECK(is_weakly_spare_sufficient(load("list_sum_even")) == SpareAnswer::yes);

  // the certified flags behind the list_sum_even answer: the duplicated
  // variable sits under addNum's first argument, which stays in normal form;
  // sum's argument does not (it receives unevaluated createL results), and
  // that poisons the nested plus positions too.
  auto nf = weak_spareness_nf_flags(load("list_sum_even"));
  CHECK(nf.at("addNum")[0]);
  CHECK(!nf.at("sum")[0]);
  CHECK(!nf.at("plus")[0]);
}

TEST_CASE("transfer class") {
  CHECK(iast_transfer_class(r_alg(), TransferGoal::ast) == TransferAnswer::not_applicable);
  CHECK(iast_transfer_class(r2(), TransferGoal::ast) == TransferAnswer::not_applicable);
  CHECK(iast_transfer_class(r2(), TransferGoal::bast) == TransferAnswer::not_applicable);
  CHECK(iast_transfer_class(r1(), TransferGoal::ast) == TransferAnswer::applicable);

  std::set<std::string> v{"x"};
  PTRS simple = make_ptrs({PRule{tparse("f(x)", v), {{{Rational(1), Term::var("x")}}}}});
  CHECK(iast_transfer_class(simple, TransferGoal::ast) == TransferAnswer::applicable);
  CHECK(iast_transfer_class(simple, TransferGoal::bast) == TransferAnswer::applicable);
}

TEST_CASE("distribution invariants") {
  CHECK_THROWS(make_ptrs({PRule{tparse("a"), {{{Rational(1, 2), tparse("b")}}}}}));
  CHECK_THROWS(make_ptrs({PRule{Term::var("x"), {{{Rational(1), tparse("b")}}}}}));
  CHECK_THROWS(make_ptrs(
      {PRule{tparse("a"), {{{Rational(1), Term::var("x")}}}}}));  // rhs-only variable
}
