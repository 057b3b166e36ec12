#include "adp/prover.hpp"

#include "adp/graph.hpp"
#include "adp/nonprob.hpp"
#include "adp/parser.hpp"

namespace adp {

namespace {

using Clock = std::chrono::steady_clock;

SolveConfig solve_config(const ProverConfig& cfg, Clock::time_point deadline) {
  SolveConfig sc;
  sc.max_coeff = cfg.max_coeff;
  sc.degree = cfg.degree;
  sc.smt_command = cfg.smt_command;
  // The interpretation search gets at most half of what is left.
  sc.deadline = Clock::now() + (deadline - Clock::now()) / 2;
  return sc;
}

json dg_payload(const std::set<std::pair<int, int>>& edges,
                const std::vector<std::vector<int>>& components) {
  json e = json::array();
  for (const auto& [a, b] : edges) e.push_back({a, b});
  json c = json::array();
  for (const auto& comp : components) c.push_back(comp);
  return {{"edges", e}, {"components", c}};
}

}  // namespace

std::optional<ProofNode> solve_problem(const ADPProblem& p, const ProverConfig& cfg,
                                       Clock::time_point deadline) {
  if (Clock::now() > deadline) return std::nullopt;

  ProofNode node;
  node.problem = problem_to_json(p);
  node.payload = json::object();

  if (!p.has_annotations()) {
    node.processor = "NoAnnotations";
    return node;
  }

  // Graph split first; it discharges annotation-free cycles and separates
  // independent parts.
  {
    std::vector<ADPProblem> subs;
    if (p.goal == Goal::bast) {
      DgSplitBast split = proc_dg_bast(p);
      subs = split.problems;
      node.payload = dg_payload(split.graph_p.edges, split.decomposition.components);
    } else {
      DgSplit split = proc_dg(p);
      subs = split.problems;
      node.payload = dg_payload(split.graph.edges, split.decomposition.components);
    }
    if (!(subs.size() == 1 && subs[0] == p)) {
      node.processor = "DG";
      for (const ADPProblem& q : subs) {
        auto child = solve_problem(q, cfg, deadline);
        if (!child) return std::nullopt;
        node.children.push_back(std::move(*child));
      }
      return node;
    }
  }

  {
    ADPProblem q = proc_ut(p);
    if (!(q == p)) {
      node.processor = "UT";
      node.payload = json::object();
      auto child = solve_problem(q, cfg, deadline);
      if (!child) return std::nullopt;
      node.children.push_back(std::move(*child));
      return node;
    }
  }

  if (p.goal != Goal::ast) {
    ADPProblem q = proc_ur(p);
    if (!(q == p)) {
      node.processor = "UR";
      json usable = json::array();
      for (const ADP& a : usable_rules(p.goal == Goal::bast ? p.combined() : p.adps))
        usable.push_back(adp_to_json(a));
      node.payload = {{"usable", usable}};
      auto child = solve_problem(q, cfg, deadline);
      if (!child) return std::nullopt;
      node.children.push_back(std::move(*child));
      return node;
    }
  }

  {
    auto rp = proc_rp(p, solve_config(cfg, deadline));
    if (rp) {
      node.processor = "RP";
      json strict_branch = json::object();
      for (const auto& [i, j] : rp->justification.strict_branch)
        strict_branch[std::to_string(i)] = j;
      node.payload = {{"interpretation", interp_to_json(rp->justification.interp)},
                      {"strict", rp->justification.strict},
                      {"strict_branch", strict_branch}};
      auto child = solve_problem(rp->problem, cfg, deadline);
      if (!child) return std::nullopt;
      node.children.push_back(std::move(*child));
      return node;
    }
  }

  if (p.all_singleton()) {
    DPProblem d = dp_problem_of(p);
    json cert;
    if (dp_terminates(d, solve_config(cfg, deadline), &cert) == DpResult::terminating) {
      node.processor = "PR";
      json pairs = json::array();
      for (const auto& [a, b] : d.pairs) pairs.push_back({term_to_json(a), term_to_json(b)});
      json rules = json::array();
      for (const auto& [a, b] : d.rules) rules.push_back({term_to_json(a), term_to_json(b)});
      node.payload = {{"pairs", pairs}, {"rules", rules}, {"certificate", cert}};
      return node;
    }
  }

  return std::nullopt;
}

namespace {

std::optional<ProofNode> chain_and_solve(const PTRS& r, Goal goal, const std::string& criterion,
                                         const ProverConfig& cfg, Clock::time_point deadline) {
  ADPProblem canonical = canonical_adps(r, goal);
  auto tree = solve_problem(canonical, cfg, deadline);
  if (!tree) return std::nullopt;
  ProofNode node;
  node.processor = "ChainCriterion";
  node.problem = {{"ptrs", print_ptrs(r)}};
  node.payload = {{"criterion", criterion}};
  node.children.push_back(std::move(*tree));
  return node;
}

std::optional<ProofNode> transfer_and_solve(const PTRS& r, Goal goal, const ProverConfig& cfg,
                                            Clock::time_point deadline) {
  TransferGoal tg = goal == Goal::ast ? TransferGoal::ast : TransferGoal::bast;
  if (iast_transfer_class(r, tg) != TransferAnswer::applicable) return std::nullopt;
  auto inner = chain_and_solve(r, Goal::iast, "iast", cfg, deadline);
  if (!inner) return std::nullopt;
  ProofNode node;
  node.processor = "TransferToInnermost";
  node.problem = {{"ptrs", print_ptrs(r)}};
  node.payload = {{"goal", goal_name(goal)}};
  node.children.push_back(std::move(*inner));
  return node;
}

}  // namespace

Verdict prove(const PTRS& r, Goal goal, const ProverConfig& cfg) {
  auto t0 = Clock::now();
  auto deadline = t0 + std::chrono::microseconds(
                           static_cast<std::int64_t>(cfg.timeout_seconds * 1e6));
  Verdict v;
  v.goal = goal;

  std::optional<ProofNode> proof;
  switch (goal) {
    case Goal::iast:
      proof = chain_and_solve(r, Goal::iast, "iast", cfg, deadline);
      break;
    case Goal::ast:
      proof = transfer_and_solve(r, Goal::ast, cfg, deadline);
      if (!proof && is_non_duplicating(r))
        proof = chain_and_solve(r, Goal::ast, "ast-nonduplicating", cfg, deadline);
      break;
    case Goal::bast:
      proof = transfer_and_solve(r, Goal::bast, cfg, deadline);
      if (!proof && is_weakly_spare_sufficient(r) == SpareAnswer::yes)
        proof = chain_and_solve(r, Goal::bast, "bast-weakly-spare", cfg, deadline);
      break;
  }
  v.proved = proof.has_value();
  v.proof = std::move(proof);
  v.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return v;
}

}  // namespace adp
