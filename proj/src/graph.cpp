#include "adp/graph.hpp"

#include <algorithm>
#include <functional>

namespace adp {

namespace {

struct EstimationContext {
  std::set<std::string> np_defined;  // roots of flag-true left-hand sides
  std::vector<Term> np_lhs;          // for the tcap unifiability refinement
  std::vector<Term> anf_lhs;         // for the innermost ANF side conditions
  Strategy mode = Strategy::full;
};

EstimationContext make_context(const std::vector<ADP>& pool, Strategy mode,
                               const std::vector<Term>& anf_lhs) {
  EstimationContext ctx;
  ctx.mode = mode;
  for (const ADP& a : pool)
    if (a.flag) {
      ctx.np_defined.insert(a.lhs.name());
      ctx.np_lhs.push_back(a.lhs);
    }
  ctx.anf_lhs = anf_lhs;
  return ctx;
}

Term cap_args(const Term& t, const EstimationContext& ctx);

Term cap_subterm(const Term& t, const EstimationContext& ctx) {
  if (t.is_var()) return ctx.mode == Strategy::full ? Term::var(fresh_var()) : t;
  Term capped = cap_args(t, ctx);
  if (!ctx.np_defined.count(t.name())) return capped;
  if (ctx.mode == Strategy::innermost) {
    // tcap refinement: keep the subterm when no rule can ever rewrite it.
    for (const Term& lhs : ctx.np_lhs)
      if (unify(flatten(capped), rename_vars(lhs, "'c"))) return Term::var(fresh_var());
    return capped;
  }
  return Term::var(fresh_var());
}

Term cap_args(const Term& t, const EstimationContext& ctx) {
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(cap_subterm(a, ctx));
  return Term::app(t.name(), t.annotated(), std::move(args));
}

// No left-hand side matches a proper subterm (variable subterms cannot be
// matched, matching skips them naturally).
bool anf_approx(const Term& t, const std::vector<Term>& lhss) {
  for (const Position& pos : positions(t)) {
    if (pos.empty()) continue;
    const Term& sub = subterm_at(t, pos);
    if (sub.is_var()) continue;
    Term flat = flatten(sub);
    for (const Term& lhs : lhss)
      if (match(lhs, flat)) return false;
  }
  return true;
}

// Does the estimated source term u (root annotated) connect to the ADP b?
// lhs_ctx carries the left-hand side owning u for the innermost conditions.
bool estimated_edge(const Term& u, const ADP& b, const EstimationContext& ctx,
                    const std::optional<Term>& lhs_ctx) {
  Term l2 = rename_vars(annotate_root(b.lhs), "'2");
  auto mu = unify(u, l2);
  if (!mu) return false;
  if (ctx.mode == Strategy::innermost) {
    if (lhs_ctx && !anf_approx(apply_subst(*lhs_ctx, *mu), ctx.anf_lhs)) return false;
    if (!anf_approx(apply_subst(flatten(l2), *mu), ctx.anf_lhs)) return false;
  }
  return true;
}

}  // namespace

Term cap_ren(const Term& t, const ADPProblem& p) {
  if (t.is_var() || !t.annotated())
    throw std::invalid_argument("cap_ren expects a term with annotated root");
  std::vector<Term> anf_lhs;
  for (const ADP& a : p.adps) anf_lhs.push_back(a.lhs);
  EstimationContext ctx = make_context(p.adps, p.strategy, anf_lhs);
  return cap_args(t, ctx);
}

bool DependencyGraph::reaches(int from, int to) const {
  std::vector<bool> seen(nodes.size(), false);
  std::vector<int> stack;
  for (const auto& [a, b] : edges)
    if (a == from && !seen[b]) {
      seen[b] = true;
      stack.push_back(b);
    }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (const auto& [a, b] : edges)
      if (a == v && !seen[b]) {
        seen[b] = true;
        stack.push_back(b);
      }
  }
  return seen[to];
}

DependencyGraph build_dependency_graph_over(const std::vector<ADP>& nodes, Strategy mode,
                                            const std::vector<Term>& anf_lhs) {
  DependencyGraph g;
  g.nodes = nodes;
  g.mode = mode;
  EstimationContext ctx = make_context(nodes, mode, anf_lhs);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::vector<Term> sources;
    for (const auto& [prob, branch] : nodes[i].branches) {
      (void)prob;
      for (const auto& [pos, sub] : annotated_subterms(branch)) {
        (void)pos;
        sources.push_back(cap_args(annotate_root(sub), ctx));
      }
    }
    for (std::size_t j = 0; j < nodes.size(); ++j)
      for (const Term& u : sources)
        if (estimated_edge(u, nodes[j], ctx, nodes[i].lhs)) {
          g.edges.emplace(static_cast<int>(i), static_cast<int>(j));
          break;
        }
  }
  return g;
}

DependencyGraph build_dependency_graph(const ADPProblem& p) {
  std::vector<Term> anf_lhs;
  for (const ADP& a : p.adps) anf_lhs.push_back(a.lhs);
  return build_dependency_graph_over(p.adps, p.strategy, anf_lhs);
}

namespace {

// Tarjan; emits components in reverse topological order.
struct TarjanState {
  const DependencyGraph& g;
  std::vector<std::vector<int>> succs;
  std::vector<int> index, low;
  std::vector<bool> on_stack;
  std::vector<int> stack;
  int next = 0;
  std::vector<std::vector<int>> components;

  explicit TarjanState(const DependencyGraph& g)
      : g(g), succs(g.nodes.size()), index(g.nodes.size(), -1), low(g.nodes.size(), 0),
        on_stack(g.nodes.size(), false) {
    for (const auto& [a, b] : g.edges) succs[a].push_back(b);
  }

  void strongconnect(int v) {
    index[v] = low[v] = next++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : succs[v]) {
      if (index[w] < 0) {
        strongconnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> comp;
      for (;;) {
        int w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
        if (w == v) break;
      }
      std::sort(comp.begin(), comp.end());
      components.push_back(std::move(comp));
    }
  }
};

}  // namespace

SCCDecomposition sccs(const DependencyGraph& g) {
  TarjanState st(g);
  for (std::size_t v = 0; v < g.nodes.size(); ++v)
    if (st.index[v] < 0) st.strongconnect(static_cast<int>(v));
  std::reverse(st.components.begin(), st.components.end());  // topological
  SCCDecomposition out;
  for (auto& comp : st.components) {
    bool cyclic = comp.size() > 1 || g.edges.count({comp[0], comp[0]}) > 0;
    if (cyclic) out.components.push_back(std::move(comp));
  }
  return out;
}

std::string graph_to_dot(const DependencyGraph& g) {
  std::string s = "digraph adp {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    s += "  n" + std::to_string(i) + " [label=\"(" + std::to_string(i + 1) + ") " +
         (g.nodes[i].flag ? "true" : "false") + "\"];\n";
  for (const auto& [a, b] : g.edges)
    s += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
  return s + "}\n";
}

namespace {

ADPProblem restrict_to(const ADPProblem& p, const std::set<int>& keep) {
  ADPProblem out = p;
  out.adps.clear();
  for (std::size_t i = 0; i < p.adps.size(); ++i)
    out.adps.push_back(keep.count(static_cast<int>(i)) ? p.adps[i] : flatten_adp(p.adps[i]));
  return normalize(std::move(out));
}

}  // namespace

DgSplit proc_dg(const ADPProblem& p) {
  if (p.goal == Goal::bast) throw GoalUnsupported("proc_dg: use the bast variant");
  DgSplit out;
  out.graph = build_dependency_graph(p);
  out.decomposition = sccs(out.graph);
  for (const auto& comp : out.decomposition.components)
    out.problems.push_back(restrict_to(p, {comp.begin(), comp.end()}));
  return out;
}

DgSplitBast proc_dg_bast(const ADPProblem& p) {
  if (p.goal != Goal::bast) throw GoalUnsupported("proc_dg_bast: bast goals only");
  DgSplitBast out;
  std::vector<Term> anf_lhs;  // unused in full mode
  out.graph_p = build_dependency_graph_over(p.adps, Strategy::full, anf_lhs);
  std::vector<ADP> combined = p.combined();
  out.graph_full = build_dependency_graph_over(combined, Strategy::full, anf_lhs);
  out.decomposition = sccs(out.graph_p);

  for (const auto& comp : out.decomposition.components) {
    // Indices of the SCC members inside the combined graph.
    std::set<int> scc_full;
    for (int i : comp) {
      auto it = std::find(combined.begin(), combined.end(), p.adps[i]);
      if (it != combined.end()) scc_full.insert(static_cast<int>(it - combined.begin()));
    }
    // Candidates: everything outside the SCC that reaches it.
    std::vector<int> candidates;
    for (std::size_t i = 0; i < combined.size(); ++i) {
      if (scc_full.count(static_cast<int>(i))) continue;
      bool reaches_scc = false;
      for (int t : scc_full)
        if (out.graph_full.reaches(static_cast<int>(i), t)) reaches_scc = true;
      if (reaches_scc) candidates.push_back(static_cast<int>(i));
    }
    auto comparable = [&](int a, int b) {
      return out.graph_full.reaches(a, b) || out.graph_full.reaches(b, a);
    };
    // Maximal pairwise-comparable subsets: maximal cliques of the
    // comparability relation on the candidates.
    std::vector<std::vector<int>> cliques;
    std::function<void(std::vector<int>&, std::vector<int>&)> extend =
        [&](std::vector<int>& cur, std::vector<int>& cand) {
          if (cand.empty()) {
            // Maximal iff no candidate outside cur is comparable with all of cur.
            for (int c : candidates) {
              if (std::find(cur.begin(), cur.end(), c) != cur.end()) continue;
              bool all = true;
              for (int x : cur)
                if (!comparable(c, x)) all = false;
              if (all) return;
            }
            cliques.push_back(cur);
            return;
          }
          int v = cand.back();
          cand.pop_back();
          // Branch 1: include v.
          std::vector<int> cand2;
          for (int w : cand)
            if (comparable(v, w)) cand2.push_back(w);
          cur.push_back(v);
          extend(cur, cand2);
          cur.pop_back();
          // Branch 2: exclude v.
          extend(cur, cand);
          cand.push_back(v);
        };
    std::vector<int> cur, cand = candidates;
    extend(cur, cand);
    std::sort(cliques.begin(), cliques.end());
    cliques.erase(std::unique(cliques.begin(), cliques.end()), cliques.end());
    if (cliques.empty()) cliques.push_back({});

    for (auto& clique : cliques) {
      std::sort(clique.begin(), clique.end());
      ADPProblem sub = p;
      sub.adps.clear();
      std::set<int> keep(comp.begin(), comp.end());
      for (std::size_t i = 0; i < p.adps.size(); ++i)
        sub.adps.push_back(keep.count(static_cast<int>(i)) ? p.adps[i]
                                                           : flatten_adp(p.adps[i]));
      std::set<int> in_clique(clique.begin(), clique.end());
      std::vector<ADP> new_reach;
      for (int i : clique) new_reach.push_back(combined[i]);
      for (std::size_t i = 0; i < p.reach.size(); ++i) {
        auto it = std::find(combined.begin(), combined.end(), p.reach[i]);
        int ci = static_cast<int>(it - combined.begin());
        if (!in_clique.count(ci) && !contains_adp(new_reach, flatten_adp(p.reach[i])))
          new_reach.push_back(flatten_adp(p.reach[i]));
      }
      sub.reach = std::move(new_reach);
      out.reach_sets.push_back(clique);
      out.problems.push_back(normalize(std::move(sub)));
    }
  }
  return out;
}

std::set<Position> usable_terms_delta_over(const Term& s, const std::vector<ADP>& judge,
                                           Strategy mode, const std::optional<Term>& lhs_ctx) {
  std::vector<Term> anf_lhs;
  for (const ADP& a : judge) anf_lhs.push_back(a.lhs);
  EstimationContext ctx = make_context(judge, mode, anf_lhs);
  std::set<Position> delta;
  for (const auto& [pos, sub] : annotated_subterms(s)) {
    Term u = cap_args(annotate_root(sub), ctx);
    for (const ADP& b : judge) {
      if (!b.annotated()) continue;
      if (estimated_edge(u, b, ctx, lhs_ctx)) {
        delta.insert(pos);
        break;
      }
    }
  }
  return delta;
}

std::set<Position> usable_terms_delta(const Term& s, const ADPProblem& p,
                                      const std::optional<Term>& lhs_ctx) {
  return usable_terms_delta_over(s, p.adps, p.strategy, lhs_ctx);
}

namespace {

ADP ut_transform_adp(const ADP& a, const std::vector<ADP>& judge, Strategy mode) {
  ADP out = a;
  for (auto& [prob, branch] : out.branches) {
    (void)prob;
    std::optional<Term> ctx;
    if (mode == Strategy::innermost) ctx = a.lhs;
    branch = set_annotations(branch, usable_terms_delta_over(branch, judge, mode, ctx));
  }
  return out;
}

}  // namespace

ADPProblem proc_ut(const ADPProblem& p) {
  ADPProblem out = p;
  for (ADP& a : out.adps) a = ut_transform_adp(a, p.adps, p.strategy);
  if (p.goal == Goal::bast) {
    std::vector<ADP> combined = p.combined();
    for (ADP& a : out.reach) a = ut_transform_adp(a, combined, p.strategy);
  }
  return normalize(std::move(out));
}

std::vector<ADP> usable_rules(const std::vector<ADP>& pool) {
  std::vector<bool> usable(pool.size(), false);
  std::vector<Term> queue;
  auto enqueue_args = [&](const Term& t) {
    for (const Term& a : t.args()) queue.push_back(flatten(a));
  };
  for (const ADP& a : pool)
    for (const auto& [prob, branch] : a.branches) {
      (void)prob;
      for (const auto& [pos, sub] : annotated_subterms(branch)) {
        (void)pos;
        enqueue_args(sub);
      }
    }
  while (!queue.empty()) {
    Term t = std::move(queue.back());
    queue.pop_back();
    if (t.is_var()) continue;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (usable[i] || !pool[i].flag || pool[i].lhs.name() != t.name()) continue;
      usable[i] = true;
      for (const auto& [prob, branch] : pool[i].branches) {
        (void)prob;
        queue.push_back(flatten(branch));
      }
    }
    enqueue_args(t);
  }
  std::vector<ADP> out;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (usable[i]) out.push_back(pool[i]);
  return out;
}

ADPProblem proc_ur(const ADPProblem& p) {
  if (p.goal == Goal::ast)
    throw GoalUnsupported("usable rules are unsound for full almost-sure termination");
  ADPProblem out = p;
  std::vector<ADP> pool = p.goal == Goal::bast ? p.combined() : p.adps;
  std::vector<ADP> usable = usable_rules(pool);
  for (ADP& a : out.adps)
    if (!contains_adp(usable, a)) a.flag = false;
  for (ADP& a : out.reach)
    if (!contains_adp(usable, a)) a.flag = false;
  return normalize(std::move(out));
}

int count_problem_annotations(const ADPProblem& p) {
  int n = 0;
  for (const ADP& a : p.adps)
    for (const auto& [prob, branch] : a.branches) {
      (void)prob;
      n += static_cast<int>(annotated_positions(branch).size());
    }
  return n;
}

}  // namespace adp
