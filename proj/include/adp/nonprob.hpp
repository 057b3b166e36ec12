#ifndef ADP_NONPROB_HPP
#define ADP_NONPROB_HPP

#include <json.hpp>

#include "adp/redpair.hpp"

namespace adp {

// Classical dependency-pair problem: annotated-root pairs plus plain rules,
// the back-end of the probability-removal step.
struct DPProblem {
  std::vector<std::pair<Term, Term>> pairs;  // annotated roots
  std::vector<std::pair<Term, Term>> rules;
  Strategy strategy = Strategy::full;
};

DPProblem dp_problem_of(const ADPProblem& p);  // (dp(P), np(P))

enum class DpResult { terminating, unknown };

// Iterated graph split + linear reduction pairs; one-sided. When it answers
// terminating, `certificate` (if given) receives a replayable record of the
// applied steps.
DpResult dp_terminates(const DPProblem& d, const SolveConfig& cfg,
                       nlohmann::json* certificate = nullptr);

// Re-validates a certificate produced by dp_terminates without searching.
bool dp_certificate_valid(const DPProblem& d, const nlohmann::json& certificate,
                          std::string* why = nullptr);

// Plain text form (pairs/rules sections) for hand-off to external tools.
std::string export_dp_problem(const DPProblem& d);

}  // namespace adp

#endif
