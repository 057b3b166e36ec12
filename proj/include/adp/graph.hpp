#ifndef ADP_GRAPH_HPP
#define ADP_GRAPH_HPP

#include <set>
#include <string>
#include <vector>

#include "adp/adp.hpp"

namespace adp {

struct GoalUnsupported : std::logic_error {
  explicit GoalUnsupported(const std::string& what) : std::logic_error(what) {}
};

struct DependencyGraph {
  std::vector<ADP> nodes;
  std::set<std::pair<int, int>> edges;
  Strategy mode = Strategy::full;

  bool reaches(int from, int to) const;  // non-empty path
};

struct SCCDecomposition {
  // Maximal cycles only (singletons without self-loop are dropped),
  // topologically sorted.
  std::vector<std::vector<int>> components;
};

// Reachability estimation: proper subterms that could be rewritten (root
// defined by a flag-true ADP) are abstracted to fresh variables. Full mode
// also renames every variable occurrence apart; innermost mode keeps
// variables and skips the abstraction when no left-hand side unifies.
Term cap_ren(const Term& t, const ADPProblem& p);

DependencyGraph build_dependency_graph(const ADPProblem& p);
DependencyGraph build_dependency_graph_over(const std::vector<ADP>& nodes, Strategy mode,
                                            const std::vector<Term>& anf_lhs);

SCCDecomposition sccs(const DependencyGraph& g);

std::string graph_to_dot(const DependencyGraph& g);

// Dependency graph processor (ast / iast): one sub-problem per SCC with the
// annotations of everything outside the SCC removed.
struct DgSplit {
  DependencyGraph graph;
  SCCDecomposition decomposition;
  std::vector<ADPProblem> problems;
};
DgSplit proc_dg(const ADPProblem& p);

// bast variant: per SCC, one sub-problem for every maximal set of pairwise
// reachability-comparable ADPs that reach the SCC in the (I u P)-graph; those
// sets become the new reachability component.
struct DgSplitBast {
  DependencyGraph graph_p;        // over the second component
  DependencyGraph graph_full;     // over I u P
  SCCDecomposition decomposition;
  std::vector<std::vector<int>> reach_sets;  // per output, indices into graph_full
  std::vector<ADPProblem> problems;
};
DgSplitBast proc_dg_bast(const ADPProblem& p);

// Usable-terms analysis: annotated positions of s whose estimated term can
// reach the left-hand side of an ADP that still carries annotations. The
// innermost variant takes the owning left-hand side for the argument-normal-
// form side conditions.
std::set<Position> usable_terms_delta(const Term& s, const ADPProblem& p,
                                      const std::optional<Term>& lhs_ctx = std::nullopt);
std::set<Position> usable_terms_delta_over(const Term& s, const std::vector<ADP>& judge,
                                           Strategy mode, const std::optional<Term>& lhs_ctx);

ADPProblem proc_ut(const ADPProblem& p);

// Least fixpoint of the rules reachable below annotated subterms; only
// flag-true ADPs propagate.
std::vector<ADP> usable_rules(const std::vector<ADP>& pool);

// Flags every non-usable ADP false. Unsound for plain ast goals and refused
// there.
ADPProblem proc_ur(const ADPProblem& p);

int count_problem_annotations(const ADPProblem& p);

}  // namespace adp

#endif
