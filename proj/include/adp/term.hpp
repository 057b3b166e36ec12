#ifndef ADP_TERM_HPP
#define ADP_TERM_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace adp {

// Position in a term: 1-based argument indices, empty = root.
using Position = std::vector<int>;

std::string position_str(const Position& p);  // "eps" or dot-separated
bool position_strictly_above(const Position& a, const Position& b);  // a proper prefix of b

enum class SymbolKind { constructor, defined };

struct Symbol {
  std::string name;
  int arity = 0;
  SymbolKind kind = SymbolKind::constructor;
};

// First-order term: a variable or a function application. Occurrences of
// defined symbols may carry an annotation flag (printed with a trailing '#').
class Term {
 public:
  Term() : var_(true), name_("_") {}

  static Term var(std::string name);
  static Term app(std::string symbol, std::vector<Term> args = {});
  static Term app(std::string symbol, bool annotated, std::vector<Term> args);

  bool is_var() const { return var_; }
  bool is_app() const { return !var_; }
  const std::string& name() const { return name_; }
  bool annotated() const { return anno_; }
  const std::vector<Term>& args() const { return args_; }
  int arity() const { return static_cast<int>(args_.size()); }

  Term with_annotation(bool on) const;

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
  // Lexicographic on (kind, name, annotation flag, args); variables first.
  bool operator<(const Term& o) const { return compare(o) < 0; }
  int compare(const Term& o) const;

  std::string str() const;
  std::size_t size() const;  // node count

 private:
  bool var_ = false;
  bool anno_ = false;
  std::string name_;
  std::vector<Term> args_;
};

using Subst = std::map<std::string, Term>;

// -- positions and structural access --------------------------------------

std::vector<Position> positions(const Term& t);  // pre-order, root first
const Term& subterm_at(const Term& t, const Position& p);  // throws on invalid
bool valid_position(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& r);

std::vector<std::string> variables(const Term& t);  // sorted, unique
int variable_count(const Term& t, const std::string& x);
bool is_ground(const Term& t);

Term apply_subst(const Term& t, const Subst& s);
Term rename_vars(const Term& t, const std::string& suffix);

// -- matching and unification ----------------------------------------------

// pattern . sigma == subject, structural (annotation flags must agree).
std::optional<Subst> match(const Term& pattern, const Term& subject);
// Most general unifier with occurs check; caller renames apart when needed.
std::optional<Subst> unify(const Term& s, const Term& t);

// Fresh variable names; never collide with parser identifiers.
std::string fresh_var();

// -- annotation bookkeeping -------------------------------------------------

Term flatten(const Term& t);  // clear every annotation flag
std::vector<Position> annotated_positions(const Term& t);  // pre-order
// Annotate exactly the positions in phi, clearing all others. Every position
// must address a defined (or already annotated) symbol occurrence.
Term annotate_at(const Term& t, const std::set<Position>& phi,
                 const std::set<std::string>& defined);
Term set_annotations(const Term& t, const std::set<Position>& phi);  // unchecked
Term strip_above(const Term& t, const Position& p);
Term annotate_root(const Term& t);  // t#: root flag on, rest flattened

// One entry per annotated position, leftmost-outermost, value flattened.
std::vector<std::pair<Position, Term>> annotated_subterms(const Term& t);

}  // namespace adp

#endif
