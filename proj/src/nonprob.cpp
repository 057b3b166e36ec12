#include "adp/nonprob.hpp"

#include <algorithm>

#include "adp/graph.hpp"
#include "adp/proof.hpp"

namespace adp {

DPProblem dp_problem_of(const ADPProblem& p) {
  return {dp(p), np(p), p.strategy};
}

namespace {

// Encode a DP problem as ADPs so the estimation and the constraint machinery
// apply unchanged: pairs become flag-false singleton ADPs with annotated
// roots (no rewriting below them), rules flag-true unannotated ones.
std::vector<ADP> encode(const DPProblem& d) {
  std::vector<ADP> nodes;
  for (const auto& [lhs, rhs] : d.pairs)
    nodes.push_back({flatten(lhs), {{Rational(1), rhs}}, false});
  for (const auto& [lhs, rhs] : d.rules)
    nodes.push_back({lhs, {{Rational(1), flatten(rhs)}}, true});
  return nodes;
}

std::vector<Term> rule_lhss(const DPProblem& d) {
  std::vector<Term> out;
  for (const auto& [lhs, rhs] : d.rules) {
    (void)rhs;
    out.push_back(lhs);
  }
  return out;
}

json pair_list_json(const std::vector<std::pair<Term, Term>>& v) {
  json out = json::array();
  for (const auto& [a, b] : v) out.push_back({term_to_json(a), term_to_json(b)});
  return out;
}

std::vector<std::pair<Term, Term>> pair_list_from(const json& j) {
  std::vector<std::pair<Term, Term>> out;
  for (const auto& e : j) out.emplace_back(term_from_json(e[0]), term_from_json(e[1]));
  return out;
}

DpResult solve_dp(const DPProblem& d, const SolveConfig& cfg, json* cert);

// One SCC: find a reduction pair, drop the strict pairs, recurse.
DpResult solve_scc(const DPProblem& d, const SolveConfig& cfg, json* cert) {
  ADPProblem encoded;
  encoded.goal = Goal::ast;
  encoded.strategy = d.strategy;
  encoded.adps = encode(d);
  auto found = find_interp(encoded, cfg);
  if (!found) return DpResult::unknown;
  DPProblem rest;
  rest.rules = d.rules;
  rest.strategy = d.strategy;
  for (std::size_t i = 0; i < d.pairs.size(); ++i)
    if (std::find(found->strict.begin(), found->strict.end(), static_cast<int>(i)) ==
        found->strict.end())
      rest.pairs.push_back(d.pairs[i]);
  json child;
  DpResult sub = solve_dp(rest, cfg, cert ? &child : nullptr);
  if (sub != DpResult::terminating) return DpResult::unknown;
  if (cert) {
    *cert = {{"kind", "reduction"},
             {"pairs", pair_list_json(d.pairs)},
             {"interpretation", interp_to_json(found->interp)},
             {"strict", found->strict},
             {"child", child}};
  }
  return DpResult::terminating;
}

DpResult solve_dp(const DPProblem& d, const SolveConfig& cfg, json* cert) {
  if (cfg.expired()) return DpResult::unknown;
  if (d.pairs.empty()) {
    if (cert) *cert = {{"kind", "empty"}};
    return DpResult::terminating;
  }
  std::vector<ADP> nodes = encode(d);
  DependencyGraph g = build_dependency_graph_over(nodes, d.strategy, rule_lhss(d));
  SCCDecomposition dec = sccs(g);
  json children = json::array();
  for (const auto& comp : dec.components) {
    // component indices refer to the encoding: pairs come first
    std::vector<int> pair_indices;
    for (int i : comp)
      if (i < static_cast<int>(d.pairs.size())) pair_indices.push_back(i);
    DPProblem sub;
    for (int i : pair_indices) sub.pairs.push_back(d.pairs[i]);
    sub.rules = d.rules;
    sub.strategy = d.strategy;
    json child;
    if (solve_scc(sub, cfg, cert ? &child : nullptr) != DpResult::terminating)
      return DpResult::unknown;
    if (cert) children.push_back(child);
  }
  if (cert)
    *cert = {{"kind", "graph"},
             {"pairs", pair_list_json(d.pairs)},
             {"components", [&] {
                json a = json::array();
                for (const auto& c : dec.components) a.push_back(c);
                return a;
              }()},
             {"children", children}};
  return DpResult::terminating;
}

bool check_cert(const DPProblem& d, const json& cert, std::string* why);

bool check_cert_reduction(const DPProblem& d, const json& cert, std::string* why) {
  PolyInterp pol = interp_from_json(cert.at("interpretation"));
  std::vector<int> strict = cert.at("strict").get<std::vector<int>>();
  ADPProblem encoded;
  encoded.goal = Goal::ast;
  encoded.strategy = d.strategy;
  encoded.adps = encode(d);
  CheckReport rep = check_interp(pol, encoded, strict);
  if (!rep.ok) {
    if (why) *why = "reduction step does not validate: " + (rep.log.empty() ? "" : rep.log.back());
    return false;
  }
  DPProblem rest;
  rest.rules = d.rules;
  rest.strategy = d.strategy;
  for (std::size_t i = 0; i < d.pairs.size(); ++i)
    if (std::find(strict.begin(), strict.end(), static_cast<int>(i)) == strict.end())
      rest.pairs.push_back(d.pairs[i]);
  return check_cert(rest, cert.at("child"), why);
}

bool check_cert(const DPProblem& d, const json& cert, std::string* why) {
  std::string kind = cert.at("kind").get<std::string>();
  if (kind == "empty") {
    if (!d.pairs.empty()) {
      if (why) *why = "empty certificate with remaining pairs";
      return false;
    }
    return true;
  }
  if (cert.contains("pairs") && pair_list_from(cert.at("pairs")) != d.pairs) {
    if (why) *why = "certificate pairs differ from the problem";
    return false;
  }
  if (kind == "reduction") return check_cert_reduction(d, cert, why);
  if (kind == "graph") {
    std::vector<ADP> nodes = encode(d);
    DependencyGraph g = build_dependency_graph_over(nodes, d.strategy, rule_lhss(d));
    SCCDecomposition dec = sccs(g);
    json comps = json::array();
    for (const auto& c : dec.components) comps.push_back(c);
    if (comps != cert.at("components")) {
      if (why) *why = "graph components differ from the recomputed ones";
      return false;
    }
    const json& children = cert.at("children");
    if (children.size() != dec.components.size()) {
      if (why) *why = "graph child count mismatch";
      return false;
    }
    for (std::size_t k = 0; k < dec.components.size(); ++k) {
      DPProblem sub;
      for (int i : dec.components[k])
        if (i < static_cast<int>(d.pairs.size())) sub.pairs.push_back(d.pairs[i]);
      sub.rules = d.rules;
      sub.strategy = d.strategy;
      if (!check_cert(sub, children[k], why)) return false;
    }
    return true;
  }
  if (why) *why = "unknown certificate kind " + kind;
  return false;
}

}  // namespace

DpResult dp_terminates(const DPProblem& d, const SolveConfig& cfg, json* certificate) {
  return solve_dp(d, cfg, certificate);
}

bool dp_certificate_valid(const DPProblem& d, const json& certificate, std::string* why) {
  try {
    return check_cert(d, certificate, why);
  } catch (const std::exception& e) {
    if (why) *why = std::string("malformed certificate: ") + e.what();
    return false;
  }
}

std::string export_dp_problem(const DPProblem& d) {
  std::string s = "(PAIRS\n";
  for (const auto& [lhs, rhs] : d.pairs) s += "  " + lhs.str() + " -> " + rhs.str() + "\n";
  s += ")\n(RULES\n";
  for (const auto& [lhs, rhs] : d.rules) s += "  " + lhs.str() + " -> " + rhs.str() + "\n";
  s += ")\n(STRATEGY " + strategy_name(d.strategy) + ")\n";
  return s;
}

}  // namespace adp
