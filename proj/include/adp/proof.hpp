#ifndef ADP_PROOF_HPP
#define ADP_PROOF_HPP

#include <json.hpp>

#include "adp/adp.hpp"
#include "adp/poly.hpp"

namespace adp {

using nlohmann::json;

// -- structured serialization (terms keep their annotation flags) ------------

json term_to_json(const Term& t);
Term term_from_json(const json& j);
json adp_to_json(const ADP& a);
ADP adp_from_json(const json& j);
json problem_to_json(const ADPProblem& p);
ADPProblem problem_from_json(const json& j);
json interp_to_json(const PolyInterp& pol);
PolyInterp interp_from_json(const json& j);

// -- proof objects -----------------------------------------------------------

// Processor application record; leaves are NoAnnotations or a discharged
// probability-removal step (or a DG node whose graph has no cycles).
struct ProofNode {
  std::string processor;  // ChainCriterion, TransferToInnermost, DG, UT, UR, RP, PR, NoAnnotations
  json problem;           // snapshot of the problem the processor was applied to
  json payload;           // per-processor justification
  std::vector<ProofNode> children;
};

json proof_to_json(const ProofNode& n);          // schema "adp-proof/1" at the root
ProofNode proof_from_json(const json& j);

// Walks the tree and re-validates every processor application: graph splits
// are recomputed and compared, usable sets recomputed, interpretations pushed
// through check_interp, probability-removal certificates replayed. No search
// is re-run.
bool replay_check(const ProofNode& root, std::string* why = nullptr);

}  // namespace adp

#endif
