#include "adp/redpair.hpp"

#include <algorithm>
#include <functional>

#include "adp/smt.hpp"

namespace adp {

std::string Unknown::name() const {
  return "c_" + symbol + (annotated ? "_sharp_" : "_") + std::to_string(mask);
}

UPoly UPoly::constant(std::int64_t c) {
  UPoly p;
  p.add({}, c);
  return p;
}

UPoly UPoly::unknown(int id) {
  UPoly p;
  p.add({id}, 1);
  return p;
}

void UPoly::add(const std::vector<int>& m, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second = detail::checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

UPoly UPoly::operator+(const UPoly& o) const {
  UPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add(m, c);
  return out;
}

UPoly UPoly::operator-(const UPoly& o) const {
  UPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add(m, -c);
  return out;
}

UPoly UPoly::operator*(const UPoly& o) const {
  UPoly out;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      std::vector<int> m = m1;
      m.insert(m.end(), m2.begin(), m2.end());
      std::sort(m.begin(), m.end());
      out.add(m, detail::checked_mul(c1, c2));
    }
  return out;
}

UPoly UPoly::scaled(std::int64_t c) const {
  UPoly out;
  for (const auto& [m, k] : terms_) out.add(m, detail::checked_mul(k, c));
  return out;
}

std::int64_t UPoly::eval(const std::vector<int>& assignment) const {
  std::int64_t total = 0;
  for (const auto& [m, c] : terms_) {
    std::int64_t v = c;
    for (int id : m) v = detail::checked_mul(v, assignment[id]);
    total = detail::checked_add(total, v);
  }
  return total;
}

std::pair<std::int64_t, std::int64_t> UPoly::interval(const std::vector<int>& assignment,
                                                      int hi) const {
  std::int64_t lo_total = 0, hi_total = 0;
  for (const auto& [m, c] : terms_) {
    std::int64_t plo = 1, phi = 1;
    for (int id : m) {
      std::int64_t l = assignment[id] >= 0 ? assignment[id] : 0;
      std::int64_t h = assignment[id] >= 0 ? assignment[id] : hi;
      plo *= l;
      phi *= h;
    }
    if (c >= 0) {
      lo_total += c * plo;
      hi_total += c * phi;
    } else {
      lo_total += c * phi;
      hi_total += c * plo;
    }
  }
  return {lo_total, hi_total};
}

std::string UPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += std::to_string(c);
    for (int id : m) s += "*u" + std::to_string(id);
  }
  return s;
}

namespace {

// Template table: one unknown per (symbol, annotated, monomial mask).
struct Templates {
  std::vector<Unknown> unknowns;
  std::map<std::pair<std::string, bool>, std::vector<int>> by_symbol;  // unknown ids
  std::map<std::pair<std::string, bool>, int> arity;

  void ensure(const std::string& sym, bool anno, int ar, int degree) {
    auto key = std::make_pair(sym, anno);
    if (by_symbol.count(key)) return;
    arity[key] = ar;
    std::vector<std::uint32_t> masks{0};
    for (int i = 0; i < ar; ++i) masks.push_back(1u << i);
    if (degree >= 2)
      for (int i = 0; i < ar; ++i)
        for (int j = i + 1; j < ar; ++j) masks.push_back((1u << i) | (1u << j));
    std::vector<int>& ids = by_symbol[key];
    for (std::uint32_t m : masks) {
      ids.push_back(static_cast<int>(unknowns.size()));
      unknowns.push_back({sym, anno, m, ar});
    }
  }
};

void collect_symbols(const Term& t, Templates& tpl, int degree) {
  if (t.is_var()) return;
  tpl.ensure(t.name(), t.annotated(), t.arity(), degree);
  for (const Term& a : t.args()) collect_symbols(a, tpl, degree);
}

// Polynomial over term variables whose coefficients are unknown-polynomials.
struct TPoly {
  std::map<Poly::Monomial, UPoly> terms;

  TPoly operator+(const TPoly& o) const {
    TPoly out = *this;
    for (const auto& [m, c] : o.terms) {
      auto [it, inserted] = out.terms.emplace(m, c);
      if (!inserted) it->second = it->second + c;
    }
    return out;
  }
  TPoly operator-(const TPoly& o) const {
    TPoly out = *this;
    for (const auto& [m, c] : o.terms) {
      auto [it, inserted] = out.terms.emplace(m, UPoly::constant(0) - c);
      if (!inserted) it->second = it->second - c;
    }
    return out;
  }
  TPoly operator*(const TPoly& o) const {
    TPoly out;
    for (const auto& [m1, c1] : terms)
      for (const auto& [m2, c2] : o.terms) {
        Poly::Monomial m = m1;
        for (const auto& [x, e] : m2) m[x] += e;
        UPoly c = c1 * c2;
        auto [it, inserted] = out.terms.emplace(m, c);
        if (!inserted) it->second = it->second + c;
      }
    return out;
  }
  TPoly scaled(std::int64_t k) const {
    TPoly out;
    for (const auto& [m, c] : terms) out.terms.emplace(m, c.scaled(k));
    return out;
  }
};

TPoly tp_constant(std::int64_t c) {
  TPoly p;
  if (c != 0) p.terms.emplace(Poly::Monomial{}, UPoly::constant(c));
  return p;
}

TPoly eval_sym(const Term& t, const Templates& tpl) {
  if (t.is_var()) {
    TPoly p;
    p.terms.emplace(Poly::Monomial{{t.name(), 1}}, UPoly::constant(1));
    return p;
  }
  std::vector<TPoly> args;
  for (const Term& a : t.args()) args.push_back(eval_sym(a, tpl));
  auto key = std::make_pair(t.name(), t.annotated());
  TPoly out;
  const std::vector<int>& ids = tpl.by_symbol.at(key);
  for (int id : ids) {
    const Unknown& u = tpl.unknowns[id];
    TPoly mono;
    mono.terms.emplace(Poly::Monomial{}, UPoly::unknown(id));
    for (int i = 0; i < u.arity; ++i)
      if (u.mask & (1u << i)) mono = mono * args[i];
    out = out + mono;
  }
  return out;
}

TPoly sharp_sum_sym(const Term& branch, const Templates& tpl) {
  TPoly out;
  for (const auto& [pos, sub] : annotated_subterms(branch)) {
    (void)pos;
    out = out + eval_sym(sub.with_annotation(true), tpl);
  }
  return out;
}

// diff >= 0 per term monomial; strict additionally forces the constant
// monomial to be at least 1.
void emit_ineqs(const TPoly& diff, bool strict, const std::string& tag,
                std::vector<Ineq>& out) {
  bool saw_const = false;
  for (const auto& [m, c] : diff.terms) {
    bool is_const = m.empty();
    saw_const |= is_const;
    out.push_back({c, strict && is_const ? 1 : 0, tag});
  }
  if (strict && !saw_const) out.push_back({UPoly::constant(0), 1, tag});
}

std::int64_t prob_lcm(const ADP& a) {
  std::int64_t l = 1;
  for (const auto& [p, t] : a.branches) {
    (void)t;
    l = lcm_checked(l, p.den());
  }
  return l;
}

}  // namespace

ConstraintSet gen_constraints(const ADPProblem& p, const std::vector<int>& strict_candidates,
                              const SolveConfig& cfg) {
  if (strict_candidates.empty())
    throw std::invalid_argument("gen_constraints: empty strict candidate set");
  Templates tpl;
  // Collect templates for every symbol occurring in a constraint, in a
  // deterministic order.
  for (const ADP& a : p.adps) {
    collect_symbols(flatten(a.lhs), tpl, cfg.degree);
    if (a.annotated()) collect_symbols(annotate_root(a.lhs), tpl, cfg.degree);
    for (const auto& [prob, branch] : a.branches) {
      (void)prob;
      collect_symbols(flatten(branch), tpl, cfg.degree);
      for (const auto& [pos, sub] : annotated_subterms(branch)) {
        (void)pos;
        collect_symbols(annotate_root(sub), tpl, cfg.degree);
      }
    }
  }

  ConstraintSet cs;
  for (std::size_t i = 0; i < p.adps.size(); ++i) {
    const ADP& a = p.adps[i];
    std::string adp_tag = "adp " + std::to_string(i);
    std::int64_t l = prob_lcm(a);
    // (1): weak decrease against the expected annotated sum. Trivial when no
    // branch is annotated (naturals are nonnegative), so skipped then.
    if (a.annotated()) {
      TPoly lhs = eval_sym(annotate_root(a.lhs), tpl).scaled(l);
      TPoly sum = tp_constant(0);
      for (const auto& [prob, branch] : a.branches)
        sum = sum + sharp_sum_sym(branch, tpl).scaled(prob.num() * (l / prob.den()));
      emit_ineqs(lhs - sum, false, "(1) " + adp_tag, cs.base);
    }
    // (3): flag-true ADPs weakly decrease after flattening.
    if (a.flag) {
      TPoly lhs = eval_sym(flatten(a.lhs), tpl).scaled(l);
      TPoly rhs = tp_constant(0);
      for (const auto& [prob, branch] : a.branches)
        rhs = rhs + eval_sym(flatten(branch), tpl).scaled(prob.num() * (l / prob.den()));
      emit_ineqs(lhs - rhs, false, "(3) " + adp_tag, cs.base);
    }
  }
  // (2): per candidate, one option per branch.
  for (int i : strict_candidates) {
    const ADP& a = p.adps.at(i);
    StrictGroup group;
    group.adp_index = i;
    TPoly lhs_sharp = eval_sym(annotate_root(a.lhs), tpl);
    TPoly lhs_flat = eval_sym(flatten(a.lhs), tpl);
    for (std::size_t j = 0; j < a.branches.size(); ++j) {
      StrictOption opt;
      opt.branch = static_cast<int>(j);
      std::string tag = "(2) adp " + std::to_string(i) + " branch " + std::to_string(j);
      emit_ineqs(lhs_sharp - sharp_sum_sym(a.branches[j].second, tpl), true, tag, opt.ineqs);
      if (a.flag)
        emit_ineqs(lhs_flat - eval_sym(flatten(a.branches[j].second), tpl), false, tag,
                   opt.ineqs);
      group.options.push_back(std::move(opt));
    }
    cs.strict.push_back(std::move(group));
  }
  cs.unknowns = tpl.unknowns;
  return cs;
}

CheckReport check_interp(const PolyInterp& pol, const ADPProblem& p,
                         const std::vector<int>& strict) {
  CheckReport rep;
  rep.ok = true;
  auto fail = [&](const std::string& line) {
    rep.ok = false;
    rep.log.push_back("violated: " + line);
  };
  for (std::size_t i = 0; i < p.adps.size(); ++i) {
    const ADP& a = p.adps[i];
    std::string adp_tag = "adp " + std::to_string(i);
    Poly lhs_sharp = eval_term(pol, annotate_root(a.lhs));
    Poly expected;
    for (const auto& [prob, branch] : a.branches)
      expected = expected + sharp_sum(pol, branch).scaled(prob);
    if (abs_pos_geq(lhs_sharp, expected))
      rep.log.push_back("(1) " + adp_tag + " holds");
    else
      fail("(1) " + adp_tag + ": " + lhs_sharp.str() + " >= " + expected.str());
    if (a.flag) {
      Poly lhs_flat = eval_term(pol, flatten(a.lhs));
      Poly rhs;
      for (const auto& [prob, branch] : a.branches)
        rhs = rhs + eval_term(pol, flatten(branch)).scaled(prob);
      if (abs_pos_geq(lhs_flat, rhs))
        rep.log.push_back("(3) " + adp_tag + " holds");
      else
        fail("(3) " + adp_tag + ": " + lhs_flat.str() + " >= " + rhs.str());
    }
  }
  for (int i : strict) {
    const ADP& a = p.adps.at(i);
    Poly lhs_sharp = eval_term(pol, annotate_root(a.lhs));
    Poly lhs_flat = eval_term(pol, flatten(a.lhs));
    bool found = false;
    for (std::size_t j = 0; j < a.branches.size() && !found; ++j) {
      if (!abs_pos_gt(lhs_sharp, sharp_sum(pol, a.branches[j].second))) continue;
      if (a.flag && !abs_pos_geq(lhs_flat, eval_term(pol, flatten(a.branches[j].second))))
        continue;
      found = true;
      rep.strict_branch[i] = static_cast<int>(j);
      rep.log.push_back("(2) adp " + std::to_string(i) + " strict via branch " +
                        std::to_string(j));
    }
    if (!found) fail("(2) adp " + std::to_string(i) + ": no strictly decreasing branch");
  }
  return rep;
}

namespace {

struct Dfs {
  const ConstraintSet& cs;
  int hi;
  int min_strict;
  std::int64_t budget;
  const SolveConfig& cfg;

  std::vector<int> assignment;          // -1 = unassigned
  std::vector<int> order;               // variable ordering
  std::vector<std::vector<int>> ineqs_by_unknown;
  std::vector<std::vector<int>> groups_by_unknown;
  std::vector<char> group_possible;
  int possible_count = 0;
  std::int64_t nodes = 0;

  Dfs(const ConstraintSet& cs, int hi, int min_strict, const SolveConfig& cfg)
      : cs(cs), hi(hi), min_strict(min_strict), budget(cfg.node_budget), cfg(cfg) {
    assignment.assign(cs.unknowns.size(), -1);
    ineqs_by_unknown.resize(cs.unknowns.size());
    groups_by_unknown.resize(cs.unknowns.size());
    std::vector<int> occurrences(cs.unknowns.size(), 0);
    std::vector<char> in_strict(cs.unknowns.size(), 0);
    for (std::size_t k = 0; k < cs.base.size(); ++k) {
      std::set<int> mention;
      for (const auto& [m, c] : cs.base[k].expr.terms()) {
        (void)c;
        for (int id : m) mention.insert(id);
      }
      for (int id : mention) {
        ineqs_by_unknown[id].push_back(static_cast<int>(k));
        ++occurrences[id];
      }
    }
    for (std::size_t g = 0; g < cs.strict.size(); ++g) {
      std::set<int> mention;
      for (const StrictOption& opt : cs.strict[g].options)
        for (const Ineq& iq : opt.ineqs)
          for (const auto& [m, c] : iq.expr.terms()) {
            (void)c;
            for (int id : m) mention.insert(id);
          }
      for (int id : mention) {
        groups_by_unknown[id].push_back(static_cast<int>(g));
        ++occurrences[id];
        in_strict[id] = 1;
      }
    }
    order.resize(cs.unknowns.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (in_strict[a] != in_strict[b]) return in_strict[a] > in_strict[b];
      return occurrences[a] > occurrences[b];
    });
    group_possible.assign(cs.strict.size(), 1);
    possible_count = static_cast<int>(cs.strict.size());
    for (std::size_t g = 0; g < cs.strict.size(); ++g) refresh_group(static_cast<int>(g));
  }

  bool ineq_possible(const Ineq& iq) const {
    return iq.expr.interval(assignment, hi).second >= iq.lb;
  }

  bool option_possible(const StrictOption& opt) const {
    for (const Ineq& iq : opt.ineqs)
      if (!ineq_possible(iq)) return false;
    return true;
  }

  void refresh_group(int g) {
    bool possible = false;
    for (const StrictOption& opt : cs.strict[g].options)
      if (option_possible(opt)) {
        possible = true;
        break;
      }
    if (possible != static_cast<bool>(group_possible[g])) {
      group_possible[g] = possible;
      possible_count += possible ? 1 : -1;
    }
  }

  bool solve(std::size_t depth, std::vector<int>& out) {
    if (++nodes > budget || cfg.expired()) return false;
    if (depth == order.size()) {
      int strict_count = 0;
      for (const StrictGroup& g : cs.strict)
        for (const StrictOption& opt : g.options) {
          bool all = true;
          for (const Ineq& iq : opt.ineqs)
            if (iq.expr.eval(assignment) < iq.lb) all = false;
          if (all) {
            ++strict_count;
            break;
          }
        }
      if (strict_count < min_strict) return false;
      out = assignment;
      return true;
    }
    int u = order[depth];
    for (int v = 0; v <= hi; ++v) {
      assignment[u] = v;
      bool feasible = true;
      for (int k : ineqs_by_unknown[u])
        if (!ineq_possible(cs.base[k])) {
          feasible = false;
          break;
        }
      std::vector<std::pair<int, char>> saved;
      if (feasible) {
        for (int g : groups_by_unknown[u]) {
          saved.emplace_back(g, group_possible[g]);
          refresh_group(g);
        }
        if (possible_count < min_strict) feasible = false;
      }
      if (feasible && solve(depth + 1, out)) return true;
      for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
        if (group_possible[it->first] != it->second) {
          possible_count += it->second ? 1 : -1;
          group_possible[it->first] = it->second;
        }
      }
      assignment[u] = -1;
    }
    return false;
  }
};

PolyInterp interp_from_assignment(const ConstraintSet& cs, const std::vector<int>& assignment) {
  PolyInterp pol;
  for (std::size_t i = 0; i < cs.unknowns.size(); ++i) {
    const Unknown& u = cs.unknowns[i];
    auto key = std::make_pair(u.symbol, u.annotated);
    auto [it, inserted] = pol.entries.emplace(key, SymPoly::zero(u.arity));
    (void)inserted;
    if (assignment[i] != 0) it->second.coeffs[u.mask] = assignment[i];
  }
  return pol;
}

std::optional<std::vector<int>> solve_once(const ConstraintSet& cs, int hi, int min_strict,
                                           const SolveConfig& cfg) {
  if (!cfg.smt_command.empty()) {
    auto model = smt_solve(cs, hi, min_strict, cfg.smt_command);
    if (!model) return std::nullopt;
    return model;
  }
  Dfs dfs(cs, hi, min_strict, cfg);
  std::vector<int> out;
  if (dfs.solve(0, out)) return out;
  return std::nullopt;
}

}  // namespace

std::optional<RpFound> find_interp(const ADPProblem& p, const SolveConfig& cfg) {
  std::vector<int> candidates;
  for (std::size_t i = 0; i < p.adps.size(); ++i)
    if (p.adps[i].annotated()) candidates.push_back(static_cast<int>(i));
  if (candidates.empty()) return std::nullopt;
  ConstraintSet cs = gen_constraints(p, candidates, cfg);

  for (int hi = 1; hi <= cfg.max_coeff; ++hi) {
    if (cfg.expired()) return std::nullopt;
    auto model = solve_once(cs, hi, 1, cfg);
    if (!model) continue;
    // Greedy widening: ask for more strict ADPs until that fails.
    for (int want = 2; want <= static_cast<int>(candidates.size()); ++want) {
      if (cfg.expired()) break;
      auto wider = solve_once(cs, hi, want, cfg);
      if (!wider) break;
      model = wider;
    }
    RpFound found;
    found.interp = interp_from_assignment(cs, *model);
    CheckReport rep = check_interp(found.interp, p, candidates);
    // The model satisfies (1) and (3); strict membership is whatever the
    // interpretation supports, which keeps the set maximal for it.
    for (int i : candidates) {
      auto it = rep.strict_branch.find(i);
      if (it != rep.strict_branch.end()) {
        found.strict.push_back(i);
        found.strict_branch[i] = it->second;
      }
    }
    if (found.strict.empty()) continue;  // defensive: model must verify
    CheckReport final = check_interp(found.interp, p, found.strict);
    if (!final.ok) continue;
    return found;
  }
  return std::nullopt;
}

ADPProblem apply_strict_flatten(const ADPProblem& p, const std::vector<int>& strict) {
  ADPProblem next = p;
  for (int i : strict) next.adps.at(i) = flatten_adp(next.adps.at(i));
  if (p.goal == Goal::bast)
    for (int i : strict) next.reach.push_back(p.adps.at(i));
  return normalize(std::move(next));
}

std::optional<RpApplied> proc_rp(const ADPProblem& p, const SolveConfig& cfg) {
  auto found = find_interp(p, cfg);
  if (!found) return std::nullopt;
  RpApplied out;
  out.justification = *found;
  out.problem = apply_strict_flatten(p, found->strict);
  return out;
}

}  // namespace adp
