#include "adp/rewrite.hpp"

#include <algorithm>

namespace adp {

std::vector<PtrsRedex> ptrs_redexes(const Term& t, const PTRS& r, bool innermost) {
  std::vector<PtrsRedex> out;
  for (const Position& pos : positions(t)) {
    const Term& sub = subterm_at(t, pos);
    if (sub.is_var()) continue;
    for (std::size_t i = 0; i < r.rules.size(); ++i) {
      auto sigma = match(r.rules[i].lhs, sub);
      if (!sigma) continue;
      if (innermost) {
        bool args_normal = true;
        for (const Term& a : sub.args())
          if (!is_normal_form(a, r)) args_normal = false;
        if (!args_normal) continue;
      }
      out.push_back({static_cast<int>(i), pos, std::move(*sigma)});
    }
  }
  return out;
}

std::vector<std::pair<Rational, Term>> ptrs_apply(const Term& t, const PTRS& r,
                                                  const PtrsRedex& redex) {
  std::vector<std::pair<Rational, Term>> out;
  for (const auto& [p, branch] : r.rules[redex.rule].rhs.branches)
    out.emplace_back(p, replace_at(t, redex.pos, apply_subst(branch, redex.subst)));
  return out;
}

bool is_normal_form(const Term& t, const PTRS& r) {
  for (const Position& pos : positions(t)) {
    const Term& sub = subterm_at(t, pos);
    if (sub.is_var()) continue;
    for (const PRule& rule : r.rules)
      if (match(rule.lhs, sub)) return false;
  }
  return true;
}

std::string step_case_name(StepCase c) {
  switch (c) {
    case StepCase::at: return "at";
    case StepCase::af: return "af";
    case StepCase::nt: return "nt";
    case StepCase::nf: return "nf";
  }
  return "?";
}

namespace {

std::vector<Position> var_positions(const Term& t) {
  std::vector<Position> out;
  for (const Position& p : positions(t))
    if (subterm_at(t, p).is_var()) out.push_back(p);
  return out;
}

}  // namespace

Vrf greedy_vrf(const ADP& a) {
  Vrf v;
  auto lhs_vars = var_positions(a.lhs);
  for (const auto& [prob, branch] : a.branches) {
    (void)prob;
    BranchVrf bv;
    std::map<std::string, std::vector<Position>> rhs_occ;
    for (const Position& p : var_positions(branch))
      rhs_occ[subterm_at(branch, p).name()].push_back(p);
    std::map<std::string, std::size_t> used;
    for (const Position& p : lhs_vars) {
      const std::string& x = subterm_at(a.lhs, p).name();
      auto it = rhs_occ.find(x);
      if (it == rhs_occ.end()) continue;
      std::size_t& k = used[x];
      if (k < it->second.size()) bv[p] = it->second[k++];
    }
    v.per_branch.push_back(std::move(bv));
  }
  return v;
}

namespace {

// All injective partial maps from `from` onto `to` (both occurrence lists of
// one variable), encoded as index assignments; -1 = bottom.
void var_maps(std::size_t nfrom, std::size_t nto, std::vector<int>& cur,
              std::vector<std::vector<int>>& out) {
  if (cur.size() == nfrom) {
    out.push_back(cur);
    return;
  }
  cur.push_back(-1);
  var_maps(nfrom, nto, cur, out);
  cur.pop_back();
  for (std::size_t j = 0; j < nto; ++j) {
    if (std::find(cur.begin(), cur.end(), static_cast<int>(j)) != cur.end()) continue;
    cur.push_back(static_cast<int>(j));
    var_maps(nfrom, nto, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Vrf> enumerate_vrfs(const ADP& a, std::size_t cap) {
  // Per branch, the VRFs factor through per-variable injections; combine.
  std::vector<std::vector<BranchVrf>> branch_choices;
  for (const auto& [prob, branch] : a.branches) {
    (void)prob;
    std::map<std::string, std::vector<Position>> lhs_occ, rhs_occ;
    for (const Position& p : var_positions(a.lhs)) lhs_occ[subterm_at(a.lhs, p).name()].push_back(p);
    for (const Position& p : var_positions(branch))
      rhs_occ[subterm_at(branch, p).name()].push_back(p);

    std::vector<BranchVrf> acc{BranchVrf{}};
    for (const auto& [x, from] : lhs_occ) {
      const auto& to = rhs_occ[x];
      std::vector<std::vector<int>> maps;
      std::vector<int> cur;
      var_maps(from.size(), to.size(), cur, maps);
      std::vector<BranchVrf> next;
      for (const BranchVrf& base : acc) {
        for (const auto& m : maps) {
          BranchVrf bv = base;
          for (std::size_t i = 0; i < from.size(); ++i)
            if (m[i] >= 0) bv[from[i]] = to[m[i]];
          next.push_back(std::move(bv));
          if (next.size() > cap) break;
        }
        if (next.size() > cap) break;
      }
      acc = std::move(next);
    }
    branch_choices.push_back(std::move(acc));
  }

  std::vector<Vrf> out{Vrf{}};
  for (const auto& choices : branch_choices) {
    std::vector<Vrf> next;
    for (const Vrf& base : out) {
      for (const BranchVrf& bv : choices) {
        Vrf v = base;
        v.per_branch.push_back(bv);
        next.push_back(std::move(v));
        if (next.size() > cap) break;
      }
      if (next.size() > cap) break;
    }
    out = std::move(next);
  }
  if (out.size() > cap) out.resize(cap);
  return out;
}

bool anf(const Term& t, const ADPProblem& p) {
  for (const Position& pos : positions(t)) {
    if (pos.empty()) continue;
    const Term& sub = subterm_at(t, pos);
    if (sub.is_var()) continue;
    Term flat = flatten(sub);
    for (const ADP& a : p.adps)
      if (match(a.lhs, flat)) return false;
  }
  return true;
}

namespace {

std::vector<Position> redex_positions(const Term& s, const std::set<std::string>& defined) {
  std::vector<Position> out;
  for (const Position& pos : positions(s)) {
    const Term& sub = subterm_at(s, pos);
    if (sub.is_app() && (sub.annotated() || defined.count(sub.name()))) out.push_back(pos);
  }
  return out;
}

}  // namespace

std::vector<StepOutcome> adp_rewrite_innermost(const Term& s, const ADPProblem& p) {
  if (p.strategy != Strategy::innermost)
    throw std::logic_error("innermost rewriting on a full-strategy problem");
  std::vector<StepOutcome> out;
  auto defined = p.defined();
  for (const Position& pos : redex_positions(s, defined)) {
    Term redex = flatten(subterm_at(s, pos));
    bool pos_annotated = subterm_at(s, pos).annotated();
    bool redex_anf = anf(redex, p);
    for (std::size_t i = 0; i < p.adps.size(); ++i) {
      const ADP& a = p.adps[i];
      auto sigma = match(a.lhs, redex);
      if (!sigma || !redex_anf) continue;
      StepOutcome so;
      so.adp_index = static_cast<int>(i);
      so.pos = pos;
      so.subst = *sigma;
      so.kind = pos_annotated ? (a.flag ? StepCase::at : StepCase::af)
                              : (a.flag ? StepCase::nt : StepCase::nf);
      for (const auto& [prob, branch] : a.branches) {
        // (at)/(af) keep the branch annotations; (nt)/(nf) drop them. The
        // substitution is built from the flattened redex, so instantiated
        // variables never carry annotations here.
        Term inner = apply_subst(so.kind == StepCase::at || so.kind == StepCase::af
                                     ? branch
                                     : flatten(branch),
                                 *sigma);
        Term t = replace_at(s, pos, inner);
        if (so.kind == StepCase::af || so.kind == StepCase::nf) t = strip_above(t, pos);
        so.result.emplace_back(prob, std::move(t));
      }
      out.push_back(std::move(so));
    }
  }
  return out;
}

namespace {

// Positions kept from the redex via the VRF: source annotations below lhs
// variable positions move to the matching variable positions of the branch.
std::set<Position> repositioned(const Term& lhs, const Term& redex_in_s, const BranchVrf& bv) {
  std::set<Position> psi;
  auto anno = annotated_positions(redex_in_s);
  for (const auto& [rho, target] : bv) {
    for (const Position& a : anno) {
      if (a.size() < rho.size()) continue;
      if (!std::equal(rho.begin(), rho.end(), a.begin())) continue;
      Position tau(a.begin() + rho.size(), a.end());
      Position moved = target;
      moved.insert(moved.end(), tau.begin(), tau.end());
      psi.insert(std::move(moved));
    }
  }
  (void)lhs;
  return psi;
}

}  // namespace

std::vector<StepOutcome> adp_rewrite_full(const Term& s, const ADPProblem& p, bool include_nf,
                                          const VrfChoice& vrfs) {
  if (p.strategy != Strategy::full)
    throw std::logic_error("full rewriting on an innermost-strategy problem");
  std::vector<StepOutcome> out;
  auto defined = p.defined();
  for (const Position& pos : redex_positions(s, defined)) {
    const Term& in_s = subterm_at(s, pos);
    Term redex = flatten(in_s);
    bool pos_annotated = in_s.annotated();
    for (std::size_t i = 0; i < p.adps.size(); ++i) {
      const ADP& a = p.adps[i];
      auto sigma = match(a.lhs, redex);
      if (!sigma) continue;
      if (!pos_annotated && !a.flag && !include_nf) continue;
      std::vector<Vrf> candidates =
          vrfs.enumerate_all ? enumerate_vrfs(a, vrfs.cap) : std::vector<Vrf>{greedy_vrf(a)};
      for (std::size_t vi = 0; vi < candidates.size(); ++vi) {
        const Vrf& vrf = candidates[vi];
        StepOutcome so;
        so.adp_index = static_cast<int>(i);
        so.pos = pos;
        so.subst = *sigma;
        so.vrf_index = static_cast<int>(vi);
        so.kind = pos_annotated ? (a.flag ? StepCase::at : StepCase::af)
                                : (a.flag ? StepCase::nt : StepCase::nf);
        for (std::size_t j = 0; j < a.branches.size(); ++j) {
          const auto& [prob, branch] = a.branches[j];
          std::set<Position> psi = repositioned(a.lhs, in_s, vrf.per_branch[j]);
          std::set<Position> phi = psi;
          if (so.kind == StepCase::at || so.kind == StepCase::af)
            for (const Position& q : annotated_positions(branch)) phi.insert(q);
          Term inner = set_annotations(apply_subst(branch, *sigma), phi);
          Term t = replace_at(s, pos, inner);
          if (so.kind == StepCase::af || so.kind == StepCase::nf) t = strip_above(t, pos);
          so.result.emplace_back(prob, std::move(t));
        }
        out.push_back(std::move(so));
      }
    }
  }
  return out;
}

int count_annotations(const Term& t) {
  return static_cast<int>(annotated_positions(t).size());
}

}  // namespace adp
