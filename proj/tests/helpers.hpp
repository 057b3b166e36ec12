#ifndef ADP_TESTS_HELPERS_HPP
#define ADP_TESTS_HELPERS_HPP

#include <cctype>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "adp/adp.hpp"
#include "adp/parser.hpp"

namespace adp::testing {

// Tiny term reader for test fixtures. Identifiers in `vars` become variables;
// a trailing '#' marks an annotated occurrence, e.g. "d(G)" is written
// "d(g#(...))" as "d(g#)" for constants.
inline Term tparse(const std::string& text, const std::set<std::string>& vars = {}) {
  std::size_t pos = 0;
  auto skip = [&] { while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos; };
  std::function<Term()> term = [&]() -> Term {
    skip();
    std::string id;
    while (pos < text.size() &&
           (std::isalnum((unsigned char)text[pos]) || text[pos] == '_' || text[pos] == '\'' ||
            text[pos] == '!'))
      id += text[pos++];
    if (id.empty()) throw std::runtime_error("tparse: expected identifier in " + text);
    bool anno = false;
    if (pos < text.size() && text[pos] == '#') {
      anno = true;
      ++pos;
    }
    skip();
    std::vector<Term> args;
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      for (;;) {
        args.push_back(term());
        skip();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        break;
      }
      skip();
      if (pos >= text.size() || text[pos] != ')') throw std::runtime_error("tparse: missing )");
      ++pos;
    }
    if (vars.count(id)) {
      if (anno || !args.empty()) throw std::runtime_error("tparse: bad variable use " + id);
      return Term::var(id);
    }
    return Term::app(id, anno, std::move(args));
  };
  Term t = term();
  skip();
  if (pos != text.size()) throw std::runtime_error("tparse: trailing input in " + text);
  return t;
}

inline PTRS load(const std::string& name) { return parse_ptrs_file("corpus/" + name + ".ptrs"); }

inline PTRS r1() { return load("r1"); }
inline PTRS r2() { return load("r2"); }
inline PTRS r3() { return load("r3"); }
inline PTRS r_alg() { return load("r_alg"); }

// The reachability-component illustration problem: an initializer feeding a
// supercritical branching process. Built directly because its annotation
// pattern is not the canonical one.
inline ADPProblem p_g_problem() {
  std::set<std::string> v{"x1", "x2", "x3", "x4"};
  ADPProblem p;
  p.goal = Goal::bast;
  p.strategy = Strategy::full;
  p.adps.push_back({tparse("init"), {{Rational(1), tparse("f#(g)")}}, true});
  p.adps.push_back({tparse("g"),
                    {{Rational(1, 2), tparse("c(g,g,g,g)")}, {Rational(1, 2), tparse("0")}},
                    true});
  p.adps.push_back({tparse("f(c(x1,x2,x3,x4))", v),
                    {{Rational(1), tparse("c(f#(x1),f#(x2),f#(x3),f#(x4))", v)}},
                    true});
  return p;
}

struct RandomTerms {
  std::mt19937_64 rng;
  explicit RandomTerms(std::uint64_t seed) : rng(seed) {}

  // Random term over a signature; leaned on constructors/variables near the
  // depth bound so sizes stay small.
  Term gen(const std::vector<Symbol>& sig, const std::vector<std::string>& vars, int depth) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(sig.size() + vars.size()) - 1);
    for (;;) {
      int k = pick(rng);
      if (k >= static_cast<int>(sig.size())) return Term::var(vars[k - sig.size()]);
      const Symbol& s = sig[k];
      if (depth <= 0 && s.arity > 0) continue;
      std::vector<Term> args;
      for (int i = 0; i < s.arity; ++i) args.push_back(gen(sig, vars, depth - 1));
      return Term::app(s.name, std::move(args));
    }
  }

  // Annotate a random subset of defined positions.
  Term annotate_random(const Term& t, const std::set<std::string>& defined) {
    std::set<Position> phi;
    std::bernoulli_distribution flip(0.5);
    for (const Position& p : positions(t)) {
      const Term& sub = subterm_at(t, p);
      if (sub.is_app() && defined.count(sub.name()) && flip(rng)) phi.insert(p);
    }
    return set_annotations(t, phi);
  }
};

}  // namespace adp::testing

#endif
