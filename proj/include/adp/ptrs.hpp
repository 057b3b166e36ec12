#ifndef ADP_PTRS_HPP
#define ADP_PTRS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adp/rational.hpp"
#include "adp/term.hpp"

namespace adp {

// Probability: exact rational in (0, 1].
class Probability {
 public:
  explicit Probability(Rational v) : value_(v) {
    if (!(v > Rational(0)) || v > Rational(1))
      throw std::invalid_argument("probability must lie in (0,1], got " + v.str());
  }
  const Rational& value() const { return value_; }

 private:
  Rational value_;
};

// Finite multi-distribution: branches sum to 1. Order is significant and
// equal branches are kept apart (multiset semantics).
struct MultiDistribution {
  std::vector<std::pair<Rational, Term>> branches;

  void validate() const;
};

struct PRule {
  Term lhs;                // non-variable, unannotated
  MultiDistribution rhs;   // branch terms unannotated, vars from lhs

  void validate() const;
  std::string str() const;
};

struct PTRS {
  std::map<std::string, Symbol> signature;
  std::vector<PRule> rules;
  std::optional<Term> start;
};

// Builds the signature (arities + constructor/defined split) from the rules
// and an optional start term; throws on arity conflicts.
PTRS make_ptrs(std::vector<PRule> rules, std::optional<Term> start = std::nullopt);

std::set<std::string> defined_symbols(const PTRS& r);
// Partition of the signature into (constructors, defined symbols).
std::pair<std::vector<Symbol>, std::vector<Symbol>> split_signature(const PTRS& r);

bool is_left_linear(const PTRS& r);
bool is_right_linear(const PTRS& r);
bool is_non_duplicating(const PTRS& r);
bool is_non_overlapping(const PTRS& r);
bool is_basic(const Term& t, const PTRS& r);

enum class SpareAnswer { yes, unknown };
// One-sided sufficient check for weak spareness (see README); never answers
// "no". A variable duplicated by some rule branch must occur in the left-hand
// side only beneath argument positions whose instances stay in normal form
// along every run from a basic term, tracked by a per-(symbol, argument)
// fixpoint.
SpareAnswer is_weakly_spare_sufficient(const PTRS& r);

// Exposed for tests: NF(f, i) flags computed by the fixpoint, keyed by symbol
// name; positions are 0-based argument indices.
std::map<std::string, std::vector<bool>> weak_spareness_nf_flags(const PTRS& r);

enum class TransferGoal { ast, bast };
enum class TransferAnswer { applicable, not_applicable };
// Classes on which innermost almost-sure termination transfers to the goal:
// non-overlapping + left-linear + right-linear (ast), or non-overlapping +
// left-linear + certified spare (bast).
TransferAnswer iast_transfer_class(const PTRS& r, TransferGoal goal);

std::string print_ptrs(const PTRS& r);

}  // namespace adp

#endif
