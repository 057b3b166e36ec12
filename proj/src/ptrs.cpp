#include "adp/ptrs.hpp"

#include <algorithm>
#include <stdexcept>

namespace adp {

void MultiDistribution::validate() const {
  if (branches.empty()) throw std::invalid_argument("empty multi-distribution");
  Rational sum(0);
  for (const auto& [p, t] : branches) {
    (void)t;
    Probability check(p);  // 0 < p <= 1
    sum += p;
  }
  if (sum != Rational(1))
    throw std::invalid_argument("branch probabilities sum to " + sum.str() + ", expected 1");
}

void PRule::validate() const {
  if (lhs.is_var()) throw std::invalid_argument("rule left-hand side is a variable");
  if (!annotated_positions(lhs).empty() )
    throw std::invalid_argument("rule left-hand side carries annotations");
  rhs.validate();
  auto lv = variables(lhs);
  for (const auto& [p, t] : rhs.branches) {
    (void)p;
    for (const std::string& x : variables(t))
      if (!std::binary_search(lv.begin(), lv.end(), x))
        throw std::invalid_argument("variable " + x + " occurs only in a right-hand side of " +
                                    lhs.str());
  }
}

std::string PRule::str() const {
  std::string s = lhs.str() + " -> { ";
  for (std::size_t i = 0; i < rhs.branches.size(); ++i) {
    if (i) s += ", ";
    s += rhs.branches[i].first.str() + " : " + rhs.branches[i].second.str();
  }
  return s + " }";
}

namespace {

void record_symbols(const Term& t, std::map<std::string, Symbol>& sig) {
  if (t.is_var()) return;
  auto it = sig.find(t.name());
  if (it == sig.end()) {
    sig.emplace(t.name(), Symbol{t.name(), t.arity(), SymbolKind::constructor});
  } else if (it->second.arity != t.arity()) {
    throw std::invalid_argument("symbol " + t.name() + " used with arities " +
                                std::to_string(it->second.arity) + " and " +
                                std::to_string(t.arity()));
  }
  for (const Term& a : t.args()) record_symbols(a, sig);
}

}  // namespace

PTRS make_ptrs(std::vector<PRule> rules, std::optional<Term> start) {
  PTRS r;
  for (const PRule& rule : rules) rule.validate();
  r.rules = std::move(rules);
  r.start = std::move(start);
  for (const PRule& rule : r.rules) {
    record_symbols(rule.lhs, r.signature);
    for (const auto& [p, t] : rule.rhs.branches) {
      (void)p;
      record_symbols(t, r.signature);
    }
  }
  if (r.start) record_symbols(*r.start, r.signature);
  for (const PRule& rule : r.rules) r.signature.at(rule.lhs.name()).kind = SymbolKind::defined;
  return r;
}

std::set<std::string> defined_symbols(const PTRS& r) {
  std::set<std::string> d;
  for (const PRule& rule : r.rules) d.insert(rule.lhs.name());
  return d;
}

std::pair<std::vector<Symbol>, std::vector<Symbol>> split_signature(const PTRS& r) {
  std::vector<Symbol> cons, defd;
  for (const auto& [name, sym] : r.signature) {
    (void)name;
    (sym.kind == SymbolKind::defined ? defd : cons).push_back(sym);
  }
  return {cons, defd};
}

bool is_left_linear(const PTRS& r) {
  for (const PRule& rule : r.rules)
    for (const std::string& x : variables(rule.lhs))
      if (variable_count(rule.lhs, x) > 1) return false;
  return true;
}

bool is_right_linear(const PTRS& r) {
  for (const PRule& rule : r.rules)
    for (const auto& [p, t] : rule.rhs.branches) {
      (void)p;
      for (const std::string& x : variables(t))
        if (variable_count(t, x) > 1) return false;
    }
  return true;
}

bool is_non_duplicating(const PTRS& r) {
  for (const PRule& rule : r.rules)
    for (const auto& [p, t] : rule.rhs.branches) {
      (void)p;
      for (const std::string& x : variables(t))
        if (variable_count(t, x) > variable_count(rule.lhs, x)) return false;
    }
  return true;
}

bool is_non_overlapping(const PTRS& r) {
  for (std::size_t i = 0; i < r.rules.size(); ++i) {
    Term l1 = rename_vars(r.rules[i].lhs, "'1");
    for (std::size_t j = 0; j < r.rules.size(); ++j) {
      Term l2 = rename_vars(r.rules[j].lhs, "'2");
      for (const Position& p : positions(l1)) {
        if (subterm_at(l1, p).is_var()) continue;
        if (i == j && p.empty()) continue;  // a rule trivially overlaps itself at the root
        if (unify(subterm_at(l1, p), l2)) return false;
      }
    }
  }
  return true;
}

bool is_basic(const Term& t, const PTRS& r) {
  if (t.is_var() || !annotated_positions(t).empty()) return false;
  auto defd = defined_symbols(r);
  if (!defd.count(t.name())) return false;
  for (const Term& a : t.args())
    for (const Position& p : positions(a))
      if (subterm_at(a, p).is_app() && defd.count(subterm_at(a, p).name())) return false;
  return true;
}

namespace {

bool is_constructor_term(const Term& t, const std::set<std::string>& defd) {
  if (t.is_var()) return true;
  if (defd.count(t.name())) return false;
  for (const Term& a : t.args())
    if (!is_constructor_term(a, defd)) return false;
  return true;
}

// Positions (as argument paths through the lhs) where x occurs: for each
// occurrence, the pair (root symbol, argument index) chain is what the NF
// analysis consults; only the outermost (symbol, index) pair matters here
// because start terms are basic.
struct VarUnderArgs {
  // For every occurrence of a variable in the lhs, all (f, i) frames on the
  // path from the root to the occurrence.
  static void frames(const Term& t, const std::string& x,
                     std::vector<std::pair<std::string, int>>& path,
                     std::vector<std::vector<std::pair<std::string, int>>>& out) {
    if (t.is_var()) {
      if (t.name() == x) out.push_back(path);
      return;
    }
    for (int i = 0; i < t.arity(); ++i) {
      path.emplace_back(t.name(), i);
      frames(t.args()[i], x, path, out);
      path.pop_back();
    }
  }
};

}  // namespace

std::map<std::string, std::vector<bool>> weak_spareness_nf_flags(const PTRS& r) {
  auto defd = defined_symbols(r);
  std::map<std::string, std::vector<bool>> nf;
  for (const auto& [name, sym] : r.signature)
    if (sym.kind == SymbolKind::defined) nf[name].assign(std::max(sym.arity, 0), true);

  auto var_ok = [&](const PRule& rule, const std::string& x) {
    // x may only sit beneath argument positions currently flagged NF.
    std::vector<std::vector<std::pair<std::string, int>>> occ;
    std::vector<std::pair<std::string, int>> path;
    VarUnderArgs::frames(rule.lhs, x, path, occ);
    for (const auto& frames : occ)
      for (const auto& [f, i] : frames)
        if (defd.count(f) && !nf.at(f)[i]) return false;
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const PRule& rule : r.rules) {
      for (const auto& [p, branch] : rule.rhs.branches) {
        (void)p;
        for (const Position& pos : positions(branch)) {
          const Term& sub = subterm_at(branch, pos);
          if (sub.is_var() || !defd.count(sub.name())) continue;
          for (int i = 0; i < sub.arity(); ++i) {
            if (!nf.at(sub.name())[i]) continue;
            const Term& arg = sub.args()[i];
            bool ok = is_constructor_term(arg, defd);
            if (ok)
              for (const std::string& x : variables(arg))
                if (!var_ok(rule, x)) ok = false;
            if (!ok) {
              nf.at(sub.name())[i] = false;
              changed = true;
            }
          }
        }
      }
    }
  }
  return nf;
}

SpareAnswer is_weakly_spare_sufficient(const PTRS& r) {
  auto defd = defined_symbols(r);
  auto nf = weak_spareness_nf_flags(r);
  for (const PRule& rule : r.rules) {
    for (const auto& [p, branch] : rule.rhs.branches) {
      (void)p;
      for (const std::string& x : variables(branch)) {
        if (variable_count(branch, x) <= variable_count(rule.lhs, x)) continue;
        // Duplicated variable: every occurrence in the lhs must sit beneath
        // NF-flagged argument positions only.
        std::vector<std::vector<std::pair<std::string, int>>> occ;
        std::vector<std::pair<std::string, int>> path;
        VarUnderArgs::frames(rule.lhs, x, path, occ);
        for (const auto& frames : occ)
          for (const auto& [f, i] : frames)
            if (defd.count(f) && !nf.at(f)[i]) return SpareAnswer::unknown;
      }
    }
  }
  return SpareAnswer::yes;
}

TransferAnswer iast_transfer_class(const PTRS& r, TransferGoal goal) {
  if (!is_non_overlapping(r) || !is_left_linear(r)) return TransferAnswer::not_applicable;
  if (goal == TransferGoal::ast)
    return is_right_linear(r) ? TransferAnswer::applicable : TransferAnswer::not_applicable;
  // For left-linear systems the certified weak-spareness condition coincides
  // with spareness (a variable occurs at most once in the lhs).
  return is_weakly_spare_sufficient(r) == SpareAnswer::yes ? TransferAnswer::applicable
                                                           : TransferAnswer::not_applicable;
}

std::string print_ptrs(const PTRS& r) {
  std::set<std::string> vars;
  for (const PRule& rule : r.rules) {
    for (const std::string& x : variables(rule.lhs)) vars.insert(x);
    for (const auto& [p, t] : rule.rhs.branches) {
      (void)p;
      for (const std::string& x : variables(t)) vars.insert(x);
    }
  }
  if (r.start)
    for (const std::string& x : variables(*r.start)) vars.insert(x);
  std::string out;
  if (!vars.empty()) {
    out += "(VAR";
    for (const std::string& x : vars) out += " " + x;
    out += ")\n";
  }
  out += "(RULES\n";
  for (const PRule& rule : r.rules) out += "  " + rule.str() + "\n";
  out += ")\n";
  if (r.start) out += "(START " + r.start->str() + ")\n";
  return out;
}

}  // namespace adp
