#ifndef ADP_ADP_HPP
#define ADP_ADP_HPP

#include <set>
#include <string>
#include <vector>

#include "adp/ptrs.hpp"

namespace adp {

enum class Goal { ast, bast, iast };
enum class Strategy { full, innermost };

std::string goal_name(Goal g);    // "AST" / "bAST" / "iAST"
std::string strategy_name(Strategy s);

// Annotated probabilistic rule. Right-hand sides may annotate defined-symbol
// occurrences; the flag says whether the rule may rewrite below annotations.
struct ADP {
  Term lhs;  // unannotated, non-variable
  std::vector<std::pair<Rational, Term>> branches;
  bool flag = true;

  bool operator==(const ADP& o) const {
    return flag == o.flag && lhs == o.lhs && branches == o.branches;
  }
  bool annotated() const;  // some branch carries an annotation
  bool singleton() const { return branches.size() == 1; }
  std::string str() const;
};

ADP flatten_adp(const ADP& a);
ADP with_flag(const ADP& a, bool flag);

struct ADPProblem {
  std::vector<ADP> adps;
  Goal goal = Goal::iast;
  Strategy strategy = Strategy::innermost;
  std::vector<ADP> reach;  // reachability component, only for bast goals

  bool operator==(const ADPProblem& o) const {
    return adps == o.adps && goal == o.goal && strategy == o.strategy && reach == o.reach;
  }
  bool has_annotations() const;            // over adps only
  bool all_singleton() const;              // over adps only
  std::set<std::string> defined() const;   // roots of all lhs, incl. reach
  std::vector<ADP> combined() const;       // reach ++ adps, deduplicated
  std::string str() const;
};

// Removes exact duplicates and applies the eager (I \ P, P) normalization.
ADPProblem normalize(ADPProblem p);

// One ADP per rule, every defined symbol in the right-hand sides annotated,
// flag true. Strategy is innermost for iast, full otherwise; the reachability
// component starts empty.
ADPProblem canonical_adps(const PTRS& r, Goal goal);

// Non-probabilistic variant: one plain rule per branch of each flag-true ADP,
// annotations removed.
std::vector<std::pair<Term, Term>> np(const ADPProblem& p);
std::vector<std::pair<Term, Term>> np(const std::vector<ADP>& adps);

// Pairs (lhs#, t#) for every annotated subterm t of the single branch of each
// ADP. Requires every distribution to be a singleton.
std::vector<std::pair<Term, Term>> dp(const ADPProblem& p);

bool contains_adp(const std::vector<ADP>& set, const ADP& a);

}  // namespace adp

#endif
