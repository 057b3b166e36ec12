#ifndef ADP_REDPAIR_HPP
#define ADP_REDPAIR_HPP

#include <chrono>
#include <cstdint>
#include <optional>

#include "adp/adp.hpp"
#include "adp/poly.hpp"

namespace adp {

struct SolveConfig {
  int max_coeff = 3;  // coefficient domain [0, max_coeff]
  int degree = 1;     // 1 = linear templates, 2 = adds pairwise products
  std::int64_t node_budget = 6000000;  // DFS nodes per solve attempt
  std::string smt_command;             // empty: internal solver
  std::optional<std::chrono::steady_clock::time_point> deadline;

  bool expired() const {
    return deadline && std::chrono::steady_clock::now() > *deadline;
  }
};

// One unknown coefficient of a symbol template; mask selects the argument
// placeholders of the monomial.
struct Unknown {
  std::string symbol;
  bool annotated = false;
  std::uint32_t mask = 0;
  int arity = 0;

  std::string name() const;  // deterministic: c_<symbol>[_sharp]_<mask>
};

// Polynomial in the unknowns with integer coefficients; monomials are sorted
// id lists (repetitions allowed).
class UPoly {
 public:
  static UPoly constant(std::int64_t c);
  static UPoly unknown(int id);

  const std::map<std::vector<int>, std::int64_t>& terms() const { return terms_; }
  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly scaled(std::int64_t c) const;

  std::int64_t eval(const std::vector<int>& assignment) const;
  // Bounds over a box: assigned unknowns are pinned, the rest range in
  // [0, hi]; all unknowns are nonnegative.
  std::pair<std::int64_t, std::int64_t> interval(const std::vector<int>& assignment,
                                                 int hi) const;
  std::string str() const;

 private:
  void add(const std::vector<int>& m, std::int64_t c);
  std::map<std::vector<int>, std::int64_t> terms_;
};

// expr >= lb must hold for the coefficient assignment (lb is 0 or 1).
struct Ineq {
  UPoly expr;
  std::int64_t lb = 0;
  std::string tag;  // "(1) adp 3" etc., for reports and SMT comments
};

struct StrictOption {
  int branch = 0;
  std::vector<Ineq> ineqs;
};

struct StrictGroup {
  int adp_index = -1;
  std::vector<StrictOption> options;  // one per right-hand branch
};

struct ConstraintSet {
  std::vector<Unknown> unknowns;
  std::vector<Ineq> base;           // conditions (1) and (3)
  std::vector<StrictGroup> strict;  // condition (2), per candidate ADP
};

// Constraints of the reduction-pair conditions over template unknowns:
// (1) every ADP weakly decreases against the expected annotated sum,
// (2) candidates admit a strictly decreasing branch (plus the weak bound on
//     the flattened branch when the flag is true),
// (3) flag-true ADPs weakly decrease after flattening.
ConstraintSet gen_constraints(const ADPProblem& p, const std::vector<int>& strict_candidates,
                              const SolveConfig& cfg);

struct CheckReport {
  bool ok = false;
  std::map<int, int> strict_branch;    // chosen branch per strict ADP
  std::vector<std::string> log;        // one line per checked condition
};

// Validates a ground interpretation against conditions (1)-(3) with the given
// strict set, via absolute positiveness of the difference polynomials.
CheckReport check_interp(const PolyInterp& pol, const ADPProblem& p,
                         const std::vector<int>& strict);

struct RpFound {
  PolyInterp interp;
  std::vector<int> strict;          // annotated ADPs, maximal for the interp
  std::map<int, int> strict_branch;
};

// Searches the template space for an interpretation satisfying the
// conditions with a nonempty strict set, then greedily maximizes the number
// of strict ADPs.
std::optional<RpFound> find_interp(const ADPProblem& p, const SolveConfig& cfg);

struct RpApplied {
  ADPProblem problem;
  RpFound justification;
};

// Flattens the strict ADPs; for bast problems their annotated originals move
// into the reachability component.
ADPProblem apply_strict_flatten(const ADPProblem& p, const std::vector<int>& strict);
std::optional<RpApplied> proc_rp(const ADPProblem& p, const SolveConfig& cfg);

}  // namespace adp

#endif
