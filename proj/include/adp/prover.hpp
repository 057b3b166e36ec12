#ifndef ADP_PROVER_HPP
#define ADP_PROVER_HPP

#include <optional>

#include "adp/proof.hpp"
#include "adp/redpair.hpp"

namespace adp {

struct ProverConfig {
  int max_coeff = 3;
  int degree = 1;
  std::string smt_command;
  double timeout_seconds = 60.0;
  std::uint64_t seed = 0;  // recorded in the verdict; proof search is deterministic
};

struct Verdict {
  Goal goal = Goal::ast;
  bool proved = false;
  std::optional<ProofNode> proof;
  double seconds = 0.0;

  std::string result_name() const { return proved ? goal_name(goal) : "MAYBE"; }
};

// Decides the goal one-sidedly: a proved verdict carries a proof tree, and a
// failed search answers MAYBE (never a refutation).
Verdict prove(const PTRS& r, Goal goal, const ProverConfig& cfg = {});

// The processor pipeline on a single (basic) ADP problem, exposed for tests:
// graph split, usable terms, usable rules, reduction pairs, restart after any
// change, probability removal once the problem is non-probabilistic.
std::optional<ProofNode> solve_problem(const ADPProblem& p, const ProverConfig& cfg,
                                       std::chrono::steady_clock::time_point deadline);

}  // namespace adp

#endif
