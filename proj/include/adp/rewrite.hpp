#ifndef ADP_REWRITE_HPP
#define ADP_REWRITE_HPP

#include <map>
#include <vector>

#include "adp/adp.hpp"

namespace adp {

// -- plain probabilistic rewriting (simulator, oracles) ----------------------

struct PtrsRedex {
  int rule = -1;
  Position pos;
  Subst subst;
};

// All (rule, position) redexes of t; innermost restricts to redexes in
// argument normal form.
std::vector<PtrsRedex> ptrs_redexes(const Term& t, const PTRS& r, bool innermost);
std::vector<std::pair<Rational, Term>> ptrs_apply(const Term& t, const PTRS& r,
                                                  const PtrsRedex& redex);
bool is_normal_form(const Term& t, const PTRS& r);

// -- rewriting with ADPs ------------------------------------------------------

// Variable reposition function for one ADP: per branch, a partial injective
// map from variable positions of the lhs to variable positions of the branch,
// defined occurrences of the same variable only.
using BranchVrf = std::map<Position, Position>;

struct Vrf {
  std::vector<BranchVrf> per_branch;
};

// The canonical choice: per variable, lhs occurrences are matched to branch
// occurrences left to right; surplus lhs occurrences map to bottom.
Vrf greedy_vrf(const ADP& a);
// All injective VRFs, capped (the relation is existential in them, so
// exhaustive enumeration is only ever needed by the oracle).
std::vector<Vrf> enumerate_vrfs(const ADP& a, std::size_t cap);

enum class StepCase { at, af, nt, nf };
std::string step_case_name(StepCase c);

struct StepOutcome {
  int adp_index = -1;
  Position pos;
  Subst subst;
  StepCase kind = StepCase::at;
  int vrf_index = 0;  // index into the VRF list used for the enumeration
  std::vector<std::pair<Rational, Term>> result;
};

struct VrfChoice {
  bool enumerate_all = false;
  std::size_t cap = 64;
};

// Argument normal form: no lhs of the problem matches the flattening of a
// proper subterm.
bool anf(const Term& t, const ADPProblem& p);

// Innermost ADP rewriting: all steps from s, deterministic order
// (position, ADP index).
std::vector<StepOutcome> adp_rewrite_innermost(const Term& s, const ADPProblem& p);

// Full ADP rewriting with VRFs. Without include_nf, flag-false ADPs are not
// applicable at unannotated positions; with it, the (nf) case is added (the
// variant used by the oracle so normal forms stay stable under annotation
// changes). Deterministic order (position, ADP index, VRF index).
std::vector<StepOutcome> adp_rewrite_full(const Term& s, const ADPProblem& p, bool include_nf,
                                          const VrfChoice& vrfs = {});

int count_annotations(const Term& t);

}  // namespace adp

#endif
