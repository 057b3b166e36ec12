#include "adp/term.hpp"

#include <atomic>
#include <stdexcept>

namespace adp {

std::string position_str(const Position& p) {
  if (p.empty()) return "eps";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i]);
  }
  return s;
}

bool position_strictly_above(const Position& a, const Position& b) {
  if (a.size() >= b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

Term Term::var(std::string name) {
  Term t;
  t.var_ = true;
  t.name_ = std::move(name);
  return t;
}

Term Term::app(std::string symbol, std::vector<Term> args) {
  return app(std::move(symbol), false, std::move(args));
}

Term Term::app(std::string symbol, bool annotated, std::vector<Term> args) {
  Term t;
  t.var_ = false;
  t.anno_ = annotated;
  t.name_ = std::move(symbol);
  t.args_ = std::move(args);
  return t;
}

Term Term::with_annotation(bool on) const {
  if (var_) throw std::logic_error("variables cannot be annotated");
  Term t = *this;
  t.anno_ = on;
  return t;
}

bool Term::operator==(const Term& o) const {
  return var_ == o.var_ && anno_ == o.anno_ && name_ == o.name_ && args_ == o.args_;
}

int Term::compare(const Term& o) const {
  if (var_ != o.var_) return var_ ? -1 : 1;
  if (int c = name_.compare(o.name_)) return c < 0 ? -1 : 1;
  if (anno_ != o.anno_) return anno_ ? 1 : -1;
  for (std::size_t i = 0; i < args_.size() && i < o.args_.size(); ++i)
    if (int c = args_[i].compare(o.args_[i])) return c;
  if (args_.size() != o.args_.size()) return args_.size() < o.args_.size() ? -1 : 1;
  return 0;
}

std::string Term::str() const {
  if (var_) return name_;
  std::string s = name_;
  if (anno_) s += '#';
  if (!args_.empty()) {
    s += '(';
    for (std::size_t i = 0; i < args_.size(); ++i) {
      if (i) s += ',';
      s += args_[i].str();
    }
    s += ')';
  }
  return s;
}

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const Term& a : args_) n += a.size();
  return n;
}

namespace {

void collect_positions(const Term& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  for (int i = 0; i < t.arity(); ++i) {
    cur.push_back(i + 1);
    collect_positions(t.args()[i], cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  collect_positions(t, cur, out);
  return out;
}

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (int i : p) {
    if (cur->is_var() || i < 1 || i > cur->arity())
      throw std::out_of_range("invalid position " + position_str(p) + " in " + t.str());
    cur = &cur->args()[i - 1];
  }
  return *cur;
}

bool valid_position(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (int i : p) {
    if (cur->is_var() || i < 1 || i > cur->arity()) return false;
    cur = &cur->args()[i - 1];
  }
  return true;
}

Term replace_at(const Term& t, const Position& p, const Term& r) {
  if (p.empty()) return r;
  if (t.is_var() || p.front() < 1 || p.front() > t.arity())
    throw std::out_of_range("invalid position in replace_at");
  std::vector<Term> args = t.args();
  Position rest(p.begin() + 1, p.end());
  args[p.front() - 1] = replace_at(args[p.front() - 1], rest, r);
  return Term::app(t.name(), t.annotated(), std::move(args));
}

namespace {

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

}  // namespace

std::vector<std::string> variables(const Term& t) {
  std::set<std::string> s;
  collect_vars(t, s);
  return {s.begin(), s.end()};
}

int variable_count(const Term& t, const std::string& x) {
  if (t.is_var()) return t.name() == x ? 1 : 0;
  int n = 0;
  for (const Term& a : t.args()) n += variable_count(a, x);
  return n;
}

bool is_ground(const Term& t) {
  if (t.is_var()) return false;
  for (const Term& a : t.args())
    if (!is_ground(a)) return false;
  return true;
}

Term apply_subst(const Term& t, const Subst& s) {
  if (t.is_var()) {
    auto it = s.find(t.name());
    return it == s.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(apply_subst(a, s));
  return Term::app(t.name(), t.annotated(), std::move(args));
}

Term rename_vars(const Term& t, const std::string& suffix) {
  if (t.is_var()) return Term::var(t.name() + suffix);
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(rename_vars(a, suffix));
  return Term::app(t.name(), t.annotated(), std::move(args));
}

namespace {

bool match_into(const Term& pattern, const Term& subject, Subst& out) {
  if (pattern.is_var()) {
    auto [it, inserted] = out.emplace(pattern.name(), subject);
    return inserted || it->second == subject;
  }
  if (subject.is_var() || pattern.name() != subject.name() ||
      pattern.annotated() != subject.annotated() || pattern.arity() != subject.arity())
    return false;
  for (int i = 0; i < pattern.arity(); ++i)
    if (!match_into(pattern.args()[i], subject.args()[i], out)) return false;
  return true;
}

}  // namespace

std::optional<Subst> match(const Term& pattern, const Term& subject) {
  Subst s;
  if (!match_into(pattern, subject, s)) return std::nullopt;
  return s;
}

namespace {

Term walk(const Term& t, const Subst& s) {
  const Term* cur = &t;
  while (cur->is_var()) {
    auto it = s.find(cur->name());
    if (it == s.end()) break;
    cur = &it->second;
  }
  return *cur;
}

bool occurs(const std::string& x, const Term& t, const Subst& s) {
  Term r = walk(t, s);
  if (r.is_var()) return r.name() == x;
  for (const Term& a : r.args())
    if (occurs(x, a, s)) return true;
  return false;
}

bool unify_into(const Term& a, const Term& b, Subst& s) {
  Term x = walk(a, s);
  Term y = walk(b, s);
  if (x.is_var() && y.is_var() && x.name() == y.name()) return true;
  if (x.is_var()) {
    if (occurs(x.name(), y, s)) return false;
    s.emplace(x.name(), y);
    return true;
  }
  if (y.is_var()) return unify_into(y, x, s);
  if (x.name() != y.name() || x.annotated() != y.annotated() || x.arity() != y.arity())
    return false;
  for (int i = 0; i < x.arity(); ++i)
    if (!unify_into(x.args()[i], y.args()[i], s)) return false;
  return true;
}

Term resolve(const Term& t, const Subst& s) {
  Term r = walk(t, s);
  if (r.is_var()) return r;
  std::vector<Term> args;
  args.reserve(r.args().size());
  for (const Term& a : r.args()) args.push_back(resolve(a, s));
  return Term::app(r.name(), r.annotated(), std::move(args));
}

}  // namespace

std::optional<Subst> unify(const Term& s, const Term& t) {
  Subst bindings;
  if (!unify_into(s, t, bindings)) return std::nullopt;
  Subst out;
  for (const auto& [x, _] : bindings) out.emplace(x, resolve(Term::var(x), bindings));
  return out;
}

std::string fresh_var() {
  static std::atomic<std::uint64_t> counter{0};
  // '#' is not a legal identifier character, so these never clash with input.
  return "#" + std::to_string(counter.fetch_add(1));
}

Term flatten(const Term& t) {
  if (t.is_var()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(flatten(a));
  return Term::app(t.name(), false, std::move(args));
}

namespace {

void collect_annotated(const Term& t, Position& cur, std::vector<Position>& out) {
  if (t.is_app() && t.annotated()) out.push_back(cur);
  for (int i = 0; i < t.arity(); ++i) {
    cur.push_back(i + 1);
    collect_annotated(t.args()[i], cur, out);
    cur.pop_back();
  }
}

Term set_annotations_rec(const Term& t, Position& cur, const std::set<Position>& phi) {
  if (t.is_var()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (int i = 0; i < t.arity(); ++i) {
    cur.push_back(i + 1);
    args.push_back(set_annotations_rec(t.args()[i], cur, phi));
    cur.pop_back();
  }
  return Term::app(t.name(), phi.count(cur) > 0, std::move(args));
}

}  // namespace

std::vector<Position> annotated_positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  collect_annotated(t, cur, out);
  return out;
}

Term set_annotations(const Term& t, const std::set<Position>& phi) {
  Position cur;
  return set_annotations_rec(t, cur, phi);
}

Term annotate_at(const Term& t, const std::set<Position>& phi,
                 const std::set<std::string>& defined) {
  for (const Position& p : phi) {
    if (!valid_position(t, p))
      throw std::invalid_argument("annotate_at: invalid position " + position_str(p));
    const Term& sub = subterm_at(t, p);
    if (sub.is_var())
      throw std::invalid_argument("annotate_at: variable position " + position_str(p));
    if (!sub.annotated() && !defined.count(sub.name()))
      throw std::invalid_argument("annotate_at: constructor position " + position_str(p));
  }
  return set_annotations(t, phi);
}

Term strip_above(const Term& t, const Position& p) {
  if (!valid_position(t, p))
    throw std::out_of_range("strip_above: invalid position " + position_str(p));
  std::set<Position> keep;
  for (const Position& q : annotated_positions(t))
    if (!position_strictly_above(q, p)) keep.insert(q);
  return set_annotations(t, keep);
}

Term annotate_root(const Term& t) {
  if (t.is_var()) throw std::logic_error("annotate_root on a variable");
  return flatten(t).with_annotation(true);
}

std::vector<std::pair<Position, Term>> annotated_subterms(const Term& t) {
  std::vector<std::pair<Position, Term>> out;
  for (const Position& p : annotated_positions(t)) out.emplace_back(p, flatten(subterm_at(t, p)));
  return out;
}

}  // namespace adp
