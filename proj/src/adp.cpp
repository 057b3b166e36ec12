#include "adp/adp.hpp"

#include <algorithm>
#include <stdexcept>

namespace adp {

std::string goal_name(Goal g) {
  switch (g) {
    case Goal::ast: return "AST";
    case Goal::bast: return "bAST";
    case Goal::iast: return "iAST";
  }
  return "?";
}

std::string strategy_name(Strategy s) { return s == Strategy::full ? "full" : "innermost"; }

bool ADP::annotated() const {
  for (const auto& [p, t] : branches) {
    (void)p;
    if (!annotated_positions(t).empty()) return true;
  }
  return false;
}

std::string ADP::str() const {
  std::string s = lhs.str() + " -> {";
  for (std::size_t i = 0; i < branches.size(); ++i) {
    if (i) s += ", ";
    s += branches[i].first.str() + ":" + branches[i].second.str();
  }
  s += "}:";
  s += flag ? "true" : "false";
  return s;
}

ADP flatten_adp(const ADP& a) {
  ADP out = a;
  for (auto& [p, t] : out.branches) {
    (void)p;
    t = flatten(t);
  }
  return out;
}

ADP with_flag(const ADP& a, bool flag) {
  ADP out = a;
  out.flag = flag;
  return out;
}

bool ADPProblem::has_annotations() const {
  return std::any_of(adps.begin(), adps.end(), [](const ADP& a) { return a.annotated(); });
}

bool ADPProblem::all_singleton() const {
  return std::all_of(adps.begin(), adps.end(), [](const ADP& a) { return a.singleton(); });
}

std::set<std::string> ADPProblem::defined() const {
  std::set<std::string> d;
  for (const ADP& a : adps) d.insert(a.lhs.name());
  for (const ADP& a : reach) d.insert(a.lhs.name());
  return d;
}

std::vector<ADP> ADPProblem::combined() const {
  std::vector<ADP> out = reach;
  for (const ADP& a : adps)
    if (!contains_adp(out, a)) out.push_back(a);
  return out;
}

std::string ADPProblem::str() const {
  std::string s = "[" + goal_name(goal) + "/" + strategy_name(strategy) + "]";
  if (goal == Goal::bast) {
    s += " I = {";
    for (std::size_t i = 0; i < reach.size(); ++i) s += (i ? "; " : "") + reach[i].str();
    s += "}";
  }
  s += " P = {";
  for (std::size_t i = 0; i < adps.size(); ++i) s += (i ? "; " : "") + adps[i].str();
  return s + "}";
}

bool contains_adp(const std::vector<ADP>& set, const ADP& a) {
  return std::find(set.begin(), set.end(), a) != set.end();
}

ADPProblem normalize(ADPProblem p) {
  std::vector<ADP> adps;
  for (const ADP& a : p.adps)
    if (!contains_adp(adps, a)) adps.push_back(a);
  p.adps = std::move(adps);
  std::vector<ADP> reach;
  for (const ADP& a : p.reach)
    if (!contains_adp(reach, a) && !contains_adp(p.adps, a)) reach.push_back(a);
  p.reach = std::move(reach);
  if (p.goal != Goal::bast && !p.reach.empty())
    throw std::logic_error("reachability component outside a bast problem");
  return p;
}

ADPProblem canonical_adps(const PTRS& r, Goal goal) {
  auto defd = defined_symbols(r);
  ADPProblem p;
  p.goal = goal;
  p.strategy = goal == Goal::iast ? Strategy::innermost : Strategy::full;
  for (const PRule& rule : r.rules) {
    ADP a;
    a.lhs = rule.lhs;
    a.flag = true;
    for (const auto& [prob, t] : rule.rhs.branches) {
      std::set<Position> phi;
      for (const Position& pos : positions(t)) {
        const Term& sub = subterm_at(t, pos);
        if (sub.is_app() && defd.count(sub.name())) phi.insert(pos);
      }
      a.branches.emplace_back(prob, set_annotations(t, phi));
    }
    p.adps.push_back(std::move(a));
  }
  return normalize(p);
}

std::vector<std::pair<Term, Term>> np(const std::vector<ADP>& adps) {
  std::vector<std::pair<Term, Term>> rules;
  for (const ADP& a : adps) {
    if (!a.flag) continue;
    for (const auto& [p, t] : a.branches) {
      (void)p;
      std::pair<Term, Term> rule{a.lhs, flatten(t)};
      if (std::find(rules.begin(), rules.end(), rule) == rules.end()) rules.push_back(rule);
    }
  }
  return rules;
}

std::vector<std::pair<Term, Term>> np(const ADPProblem& p) { return np(p.adps); }

std::vector<std::pair<Term, Term>> dp(const ADPProblem& p) {
  std::vector<std::pair<Term, Term>> pairs;
  for (const ADP& a : p.adps) {
    if (!a.singleton())
      throw std::invalid_argument("dp: non-singleton distribution in " + a.str());
    for (const auto& [pos, sub] : annotated_subterms(a.branches[0].second)) {
      (void)pos;
      std::pair<Term, Term> pr{annotate_root(a.lhs), annotate_root(sub)};
      if (std::find(pairs.begin(), pairs.end(), pr) == pairs.end()) pairs.push_back(pr);
    }
  }
  return pairs;
}

}  // namespace adp
