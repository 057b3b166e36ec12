#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adp/simulate.hpp"
#include "helpers.hpp"

using namespace adp;
using namespace adp::testing;

namespace {
// R3's worst-case schedule: contract d(d(..)) whenever possible, otherwise
// grow with g, and only then collapse single d's.
Policy r3_adversary() {
  Policy p;
  p.pos = Policy::Pos::leftmost_outermost;
  p.rule_priority = {1, 0, 2};
  p.priority_first = true;
  return p;
}
}  // namespace

TEST_CASE("policy parsing round trip") {
  Policy p = parse_policy("lo;prio=2,1,3;prio-first");
  CHECK(p.pos == Policy::Pos::leftmost_outermost);
  CHECK(p.rule_priority == std::vector<int>{1, 0, 2});
  CHECK(p.priority_first);
  CHECK(parse_policy(p.str()).rule_priority == p.rule_priority);
  CHECK(parse_policy("li").pos == Policy::Pos::leftmost_innermost);
  CHECK(parse_policy("random").pos == Policy::Pos::random);
  CHECK_THROWS(parse_policy("bogus"));
}

TEST_CASE("sample_run basics") {
  RunRecord rec = sample_run(r1(), tparse("g"), Policy{}, 1000, 42);
  CHECK(rec.terminated);
  // ground normal form: zero steps
  RunRecord nf = sample_run(r1(), tparse("d(0)"), Policy{}, 10, 1);
  CHECK(nf.terminated);
  CHECK(nf.steps == 0);
}

TEST_CASE("termination estimates match the extinction equations") {
  // single walker: terminates almost surely, fast
  Estimate e1 = estimate_termination_prob(r1(), tparse("g"), Policy{}, 2000, 1000, 7);
  CHECK(e1.fraction.to_double() >= 0.999);

  // duplicating walk: q = 1/4 + 3/4 q^2, minimal root 1/3
  Estimate e2 = estimate_termination_prob(r2(), tparse("g"), Policy{}, 20000, 2000, 11);
  CHECK(std::abs(e2.fraction.to_double() - 1.0 / 3.0) < 0.02);

  // adversarial schedule: q = 7/16 + 9/16 q^2, minimal root 7/9
  Estimate e3 = estimate_termination_prob(r3(), tparse("g"), r3_adversary(), 20000, 2000, 13);
  CHECK(std::abs(e3.fraction.to_double() - 7.0 / 9.0) < 0.02);

  // innermost runs duplicate only normal forms: almost-sure termination
  Policy li;
  li.pos = Policy::Pos::leftmost_innermost;
  Estimate e4 = estimate_termination_prob(r2(), tparse("g"), li, 3000, 4000, 17);
  CHECK(e4.fraction.to_double() >= 0.99);

  CHECK_THROWS(estimate_termination_prob(r1(), tparse("g"), Policy{}, 0, 10, 1));
}

TEST_CASE("csv export") {
  Estimate e = estimate_termination_prob(r1(), tparse("g"), Policy{}, 5, 100, 3);
  std::string csv = runs_to_csv(e.runs);
  CHECK(csv.rfind("seed,steps,terminated\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}

TEST_CASE("exact bounded leaf mass") {
  // geometric series: mass after n expansions of the single walker
  Rational q20 = expand_bounded(r1(), tparse("g"), Policy{}, 20);
  Rational expect = Rational(1) - Rational(3486784401, 1099511627776);  // (3/4)^20
  CHECK(q20 == expect);
  CHECK(expand_bounded(r1(), tparse("g"), Policy{}, 0) == Rational(0));
  CHECK(expand_bounded(r1(), tparse("0"), Policy{}, 0) == Rational(1));

  // monotone in depth, bounded by one
  Rational prev(0);
  for (int d = 0; d <= 12; d += 3) {
    Rational m = expand_bounded(r2(), tparse("g"), Policy{}, d);
    CHECK(m >= prev);
    CHECK(m <= Rational(1));
    prev = m;
  }
}

TEST_CASE("chain-tree expansion matches the rewrite expansion") {
  // same leaf mass at every depth when every defined symbol starts annotated
  for (int d = 0; d <= 10; ++d) {
    Rational lhs = expand_bounded_adp(canonical_adps(r1(), Goal::ast),
                                      set_annotations(tparse("g"), {{}}), Policy{}, d);
    Rational rhs = expand_bounded(r1(), tparse("g"), Policy{}, d);
    CHECK(lhs == rhs);
  }
  for (int d = 0; d <= 10; ++d) {
    PTRS ra = r_alg();
    Term start = tparse("loop1(s(0))");
    Rational lhs = expand_bounded_adp(canonical_adps(ra, Goal::ast),
                                      set_annotations(start, {{}}), Policy{}, d);
    Rational rhs = expand_bounded(ra, start, Policy{}, d);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("policy minimization dominates fixed policies") {
  bool exact = false;
  Rational min_mass = expand_bounded_min(r3(), tparse("g"), 8, 200000, &exact);
  CHECK(exact);
  Rational fixed = expand_bounded(r3(), tparse("g"), Policy{}, 8);
  Rational adv = expand_bounded(r3(), tparse("g"), r3_adversary(), 8);
  CHECK(min_mass <= fixed);
  CHECK(min_mass <= adv);
}

TEST_CASE("build_rst structure") {
  TreeNode root = build_rst(r1(), tparse("g"), Policy{}, 3);
  CHECK(root.probability == Rational(1));
  REQUIRE(root.children.size() == 2);
  CHECK(root.children[0].probability == Rational(3, 4));
  CHECK(root.children[1].mark == TreeNode::Mark::leaf);
  // child probabilities sum to the parent's
  Rational sum = root.children[0].probability + root.children[1].probability;
  CHECK(sum == root.probability);
}

TEST_CASE("bounded weak-spareness scan") {
  CHECK(!weakly_spare_up_to(r2(), tparse("g"), 12));       // duplicates the redex g
  CHECK(weakly_spare_up_to(r3(), tparse("g"), 12));        // non-duplicating
  CHECK(weakly_spare_up_to(r_alg(), tparse("loop1(s(0))"), 8));
}
