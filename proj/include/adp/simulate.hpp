#ifndef ADP_SIMULATE_HPP
#define ADP_SIMULATE_HPP

#include <cstdint>
#include <optional>

#include "adp/rewrite.hpp"

namespace adp {

// Resolves the nondeterministic choice of redex and rule. Candidates are all
// (position, rule) redexes (restricted to innermost redexes under
// leftmost_innermost); the winner is the smallest under
//   (rule priority when priority_first, position order, rule priority),
// with position order pre-order for outermost and post-order for innermost
// selection. `random` picks uniformly among the candidates.
struct Policy {
  enum class Pos { leftmost_innermost, leftmost_outermost, random };
  Pos pos = Pos::leftmost_outermost;
  std::vector<int> rule_priority;  // rule indices, strongest first; rest follow in order
  bool priority_first = false;

  std::string str() const;
};

Policy parse_policy(const std::string& text);  // "lo", "li", "random", ";prio=2,1", ";prio-first"

struct RunRecord {
  std::uint64_t seed = 0;
  int steps = 0;
  bool terminated = false;
};

RunRecord sample_run(const PTRS& r, const Term& start, const Policy& policy, int max_steps,
                     std::uint64_t seed);

struct Estimate {
  Rational fraction{0};  // terminated / runs; cutoff counts as non-terminated
  double half_width = 0.0;  // 95% normal approximation
  std::vector<RunRecord> runs;
};

Estimate estimate_termination_prob(const PTRS& r, const Term& start, const Policy& policy,
                                   int runs, int max_steps, std::uint64_t seed);

std::string runs_to_csv(const std::vector<RunRecord>& runs);

// Rewrite-sequence tree node; children probabilities sum to the parent's.
// Mark A records a step at an annotated position (steps of kind at/af).
struct TreeNode {
  enum class Mark { A, N, leaf };
  Rational probability{1};
  Term term;
  Mark mark = Mark::leaf;
  std::vector<TreeNode> children;
};

// Materialized tree under a deterministic policy, cut at the given depth.
TreeNode build_rst(const PTRS& r, const Term& start, const Policy& policy, int depth);

// Exact probability mass of the leaves reachable within `depth` steps under
// the policy: a lower bound on the termination probability of that policy.
Rational expand_bounded(const PTRS& r, const Term& start, const Policy& policy, int depth);

// Chain-tree variant over an ADP problem; steps use the canonical greedy
// reposition choice.
Rational expand_bounded_adp(const ADPProblem& p, const Term& start, const Policy& policy,
                            int depth, bool include_nf = false);

// Minimum leaf mass over all redex choices, by exhaustive branching up to a
// node budget; `exact` reports whether the budget sufficed (otherwise the
// fixed policy value is returned for the exhausted subtrees).
Rational expand_bounded_min(const PTRS& r, const Term& start, int depth,
                            std::size_t node_budget, bool* exact = nullptr);

// Every step reachable from `start` within `depth` steps (all redex choices)
// satisfies the weak-spareness side condition: duplicated variables are
// instantiated by normal forms. Used as a desk-scale cross-check of the
// static analysis.
bool weakly_spare_up_to(const PTRS& r, const Term& start, int depth);

}  // namespace adp

#endif
