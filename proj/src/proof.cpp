#include "adp/proof.hpp"

#include "adp/graph.hpp"
#include "adp/nonprob.hpp"
#include "adp/parser.hpp"
#include "adp/redpair.hpp"

namespace adp {

json term_to_json(const Term& t) {
  if (t.is_var()) return json{{"v", t.name()}};
  json j{{"f", t.name()}};
  if (t.annotated()) j["#"] = true;
  if (!t.args().empty()) {
    json args = json::array();
    for (const Term& a : t.args()) args.push_back(term_to_json(a));
    j["args"] = std::move(args);
  }
  return j;
}

Term term_from_json(const json& j) {
  if (j.contains("v")) return Term::var(j.at("v").get<std::string>());
  std::vector<Term> args;
  if (j.contains("args"))
    for (const auto& a : j.at("args")) args.push_back(term_from_json(a));
  return Term::app(j.at("f").get<std::string>(), j.value("#", false), std::move(args));
}

json adp_to_json(const ADP& a) {
  json branches = json::array();
  for (const auto& [p, t] : a.branches)
    branches.push_back({{"p", {p.num(), p.den()}}, {"t", term_to_json(t)}});
  return {{"lhs", term_to_json(a.lhs)}, {"branches", branches}, {"flag", a.flag}};
}

ADP adp_from_json(const json& j) {
  ADP a;
  a.lhs = term_from_json(j.at("lhs"));
  for (const auto& b : j.at("branches")) {
    const auto& p = b.at("p");
    a.branches.emplace_back(Rational(p[0].get<std::int64_t>(), p[1].get<std::int64_t>()),
                            term_from_json(b.at("t")));
  }
  a.flag = j.at("flag").get<bool>();
  return a;
}

json problem_to_json(const ADPProblem& p) {
  json adps = json::array();
  for (const ADP& a : p.adps) adps.push_back(adp_to_json(a));
  json j{{"goal", goal_name(p.goal)}, {"strategy", strategy_name(p.strategy)}, {"adps", adps}};
  if (p.goal == Goal::bast) {
    json reach = json::array();
    for (const ADP& a : p.reach) reach.push_back(adp_to_json(a));
    j["reach"] = std::move(reach);
  }
  return j;
}

ADPProblem problem_from_json(const json& j) {
  ADPProblem p;
  std::string goal = j.at("goal").get<std::string>();
  p.goal = goal == "AST" ? Goal::ast : goal == "bAST" ? Goal::bast : Goal::iast;
  p.strategy = j.at("strategy").get<std::string>() == "full" ? Strategy::full
                                                             : Strategy::innermost;
  for (const auto& a : j.at("adps")) p.adps.push_back(adp_from_json(a));
  if (j.contains("reach"))
    for (const auto& a : j.at("reach")) p.reach.push_back(adp_from_json(a));
  return p;
}

json interp_to_json(const PolyInterp& pol) {
  json out = json::array();
  for (const auto& [key, sp] : pol.entries) {
    json coeffs = json::array();
    for (const auto& [mask, c] : sp.coeffs) coeffs.push_back({mask, c});
    out.push_back({{"symbol", key.first},
                   {"sharp", key.second},
                   {"arity", sp.arity},
                   {"coeffs", coeffs}});
  }
  return out;
}

PolyInterp interp_from_json(const json& j) {
  PolyInterp pol;
  for (const auto& e : j) {
    SymPoly sp = SymPoly::zero(e.at("arity").get<int>());
    for (const auto& mc : e.at("coeffs"))
      sp.coeffs[mc[0].get<std::uint32_t>()] = mc[1].get<std::int64_t>();
    pol.entries.emplace(
        std::make_pair(e.at("symbol").get<std::string>(), e.at("sharp").get<bool>()), sp);
  }
  return pol;
}

json proof_to_json(const ProofNode& n) {
  std::function<json(const ProofNode&)> enc = [&](const ProofNode& node) -> json {
    json children = json::array();
    for (const ProofNode& c : node.children) children.push_back(enc(c));
    return {{"processor", node.processor},
            {"problem", node.problem},
            {"payload", node.payload},
            {"children", children}};
  };
  return {{"format", "adp-proof/1"}, {"proof", enc(n)}};
}

ProofNode proof_from_json(const json& j) {
  const json& root = j.contains("proof") ? j.at("proof") : j;
  ProofNode n;
  n.processor = root.at("processor").get<std::string>();
  n.problem = root.at("problem");
  n.payload = root.at("payload");
  for (const auto& c : root.at("children")) n.children.push_back(proof_from_json(c));
  return n;
}

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

bool validate(const ProofNode& n, std::string* why);

bool validate_single_child(const ProofNode& n, const ADPProblem& expect, std::string* why) {
  if (n.children.size() != 1) return fail(why, n.processor + ": expected one child");
  ADPProblem got = problem_from_json(n.children[0].problem);
  if (!(got == expect)) return fail(why, n.processor + ": child problem mismatch");
  return validate(n.children[0], why);
}

bool validate_chain(const ProofNode& n, std::string* why) {
  PTRS r = parse_ptrs(n.problem.at("ptrs").get<std::string>());
  std::string crit = n.payload.at("criterion").get<std::string>();
  if (crit == "iast") return validate_single_child(n, canonical_adps(r, Goal::iast), why);
  if (crit == "ast-nonduplicating") {
    if (!is_non_duplicating(r)) return fail(why, "chain criterion needs non-duplication");
    return validate_single_child(n, canonical_adps(r, Goal::ast), why);
  }
  if (crit == "bast-weakly-spare") {
    if (is_weakly_spare_sufficient(r) != SpareAnswer::yes)
      return fail(why, "chain criterion needs certified weak spareness");
    return validate_single_child(n, canonical_adps(r, Goal::bast), why);
  }
  return fail(why, "unknown chain criterion " + crit);
}

bool validate_transfer(const ProofNode& n, std::string* why) {
  PTRS r = parse_ptrs(n.problem.at("ptrs").get<std::string>());
  std::string goal = n.payload.at("goal").get<std::string>();
  TransferGoal tg = goal == "AST" ? TransferGoal::ast : TransferGoal::bast;
  if (iast_transfer_class(r, tg) != TransferAnswer::applicable)
    return fail(why, "transfer class conditions not met");
  if (n.children.size() != 1 || n.children[0].processor != "ChainCriterion")
    return fail(why, "transfer must delegate to the innermost chain criterion");
  return validate(n.children[0], why);
}

bool validate_dg(const ProofNode& n, const ADPProblem& p, std::string* why) {
  std::vector<ADPProblem> expected;
  json edges = json::array();
  if (p.goal == Goal::bast) {
    DgSplitBast split = proc_dg_bast(p);
    expected = split.problems;
    for (const auto& e : split.graph_p.edges) edges.push_back({e.first, e.second});
  } else {
    DgSplit split = proc_dg(p);
    expected = split.problems;
    for (const auto& e : split.graph.edges) edges.push_back({e.first, e.second});
  }
  if (n.payload.at("edges") != edges) return fail(why, "DG: stored edges differ");
  if (n.children.size() != expected.size()) return fail(why, "DG: child count mismatch");
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (!(problem_from_json(n.children[i].problem) == expected[i]))
      return fail(why, "DG: child " + std::to_string(i) + " differs");
    if (!validate(n.children[i], why)) return false;
  }
  return true;
}

bool validate_rp(const ProofNode& n, const ADPProblem& p, std::string* why) {
  PolyInterp pol = interp_from_json(n.payload.at("interpretation"));
  std::vector<int> strict = n.payload.at("strict").get<std::vector<int>>();
  if (strict.empty()) return fail(why, "RP: empty strict set");
  bool any_annotated = false;
  for (int i : strict)
    if (p.adps.at(i).annotated()) any_annotated = true;
  if (!any_annotated) return fail(why, "RP: strict set removes no annotations");
  CheckReport rep = check_interp(pol, p, strict);
  if (!rep.ok)
    return fail(why, "RP: interpretation fails: " + (rep.log.empty() ? "" : rep.log.back()));
  return validate_single_child(n, apply_strict_flatten(p, strict), why);
}

bool validate_pr(const ProofNode& n, const ADPProblem& p, std::string* why) {
  if (!p.all_singleton()) return fail(why, "PR: needs singleton distributions");
  DPProblem d = dp_problem_of(p);
  json pairs = json::array();
  for (const auto& [a, b] : d.pairs) pairs.push_back({term_to_json(a), term_to_json(b)});
  json rules = json::array();
  for (const auto& [a, b] : d.rules) rules.push_back({term_to_json(a), term_to_json(b)});
  if (n.payload.at("pairs") != pairs || n.payload.at("rules") != rules)
    return fail(why, "PR: stored dp/np construction differs");
  std::string sub;
  if (!dp_certificate_valid(d, n.payload.at("certificate"), &sub))
    return fail(why, "PR: " + sub);
  if (!n.children.empty()) return fail(why, "PR: must be a leaf");
  return true;
}

bool validate(const ProofNode& n, std::string* why) {
  if (n.processor == "ChainCriterion") return validate_chain(n, why);
  if (n.processor == "TransferToInnermost") return validate_transfer(n, why);
  ADPProblem p = problem_from_json(n.problem);
  if (n.processor == "NoAnnotations") {
    if (p.has_annotations()) return fail(why, "NoAnnotations: problem still has annotations");
    if (!n.children.empty()) return fail(why, "NoAnnotations: must be a leaf");
    return true;
  }
  if (n.processor == "DG") return validate_dg(n, p, why);
  if (n.processor == "UT") return validate_single_child(n, proc_ut(p), why);
  if (n.processor == "UR") return validate_single_child(n, proc_ur(p), why);
  if (n.processor == "RP") return validate_rp(n, p, why);
  if (n.processor == "PR") return validate_pr(n, p, why);
  return fail(why, "unknown processor " + n.processor);
}

}  // namespace

bool replay_check(const ProofNode& root, std::string* why) {
  try {
    return validate(root, why);
  } catch (const std::exception& e) {
    return fail(why, std::string("malformed proof: ") + e.what());
  }
}

}  // namespace adp
