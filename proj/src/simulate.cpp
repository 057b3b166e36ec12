#include "adp/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "sim_engine.hpp"

namespace adp {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d649bb133111ebull;
  return z ^ (z >> 31);
}

// pre-order (outermost) / post-order (innermost) index of every position
std::map<Position, int> position_order(const Term& t, bool post) {
  std::map<Position, int> order;
  int counter = 0;
  std::function<void(const Term&, Position&)> walk = [&](const Term& u, Position& cur) {
    if (!post) order[cur] = counter++;
    for (int i = 0; i < u.arity(); ++i) {
      cur.push_back(i + 1);
      walk(u.args()[i], cur);
      cur.pop_back();
    }
    if (post) order[cur] = counter++;
  };
  Position cur;
  walk(t, cur);
  return order;
}

std::vector<PtrsRedex> policy_candidates(const Term& t, const PTRS& r, const Policy& policy) {
  return ptrs_redexes(t, r, policy.pos == Policy::Pos::leftmost_innermost);
}

int priority_rank(const Policy& policy, int rule, int nrules) {
  for (std::size_t i = 0; i < policy.rule_priority.size(); ++i)
    if (policy.rule_priority[i] == rule) return static_cast<int>(i);
  return static_cast<int>(policy.rule_priority.size()) + (rule % nrules);
}

std::optional<PtrsRedex> select_step(const Term& t, const PTRS& r, const Policy& policy,
                                     std::mt19937_64* rng) {
  std::vector<PtrsRedex> candidates = policy_candidates(t, r, policy);
  if (candidates.empty()) return std::nullopt;
  if (policy.pos == Policy::Pos::random && rng) {
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    return candidates[pick(*rng)];
  }
  auto order = position_order(t, policy.pos == Policy::Pos::leftmost_innermost);
  int n = static_cast<int>(r.rules.size());
  auto key = [&](const PtrsRedex& c) {
    int pr = priority_rank(policy, c.rule, n);
    int po = order.at(c.pos);
    return policy.priority_first ? std::pair<int, int>(pr, po) : std::pair<int, int>(po, pr);
  };
  return *std::min_element(candidates.begin(), candidates.end(),
                           [&](const PtrsRedex& a, const PtrsRedex& b) { return key(a) < key(b); });
}

}  // namespace

std::string Policy::str() const {
  std::string s = pos == Pos::leftmost_innermost  ? "li"
                  : pos == Pos::leftmost_outermost ? "lo"
                                                   : "random";
  if (!rule_priority.empty()) {
    s += ";prio=";
    for (std::size_t i = 0; i < rule_priority.size(); ++i)
      s += (i ? "," : "") + std::to_string(rule_priority[i] + 1);
  }
  if (priority_first) s += ";prio-first";
  return s;
}

Policy parse_policy(const std::string& text) {
  Policy p;
  std::stringstream ss(text);
  std::string part;
  bool first = true;
  while (std::getline(ss, part, ';')) {
    if (first) {
      if (part == "li")
        p.pos = Policy::Pos::leftmost_innermost;
      else if (part == "lo" || part.empty())
        p.pos = Policy::Pos::leftmost_outermost;
      else if (part == "random")
        p.pos = Policy::Pos::random;
      else
        throw std::invalid_argument("unknown position strategy " + part);
      first = false;
    } else if (part.rfind("prio=", 0) == 0) {
      std::stringstream ns(part.substr(5));
      std::string num;
      while (std::getline(ns, num, ','))
        p.rule_priority.push_back(std::stoi(num) - 1);  // 1-based in the interface
    } else if (part == "prio-first") {
      p.priority_first = true;
    } else {
      throw std::invalid_argument("unknown policy option " + part);
    }
  }
  return p;
}

RunRecord sample_run(const PTRS& r, const Term& start, const Policy& policy, int max_steps,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // terms can outgrow any step budget (duplicating rules square sizes);
  // treat oversized runs as cut off, like running out of steps
  sim::Engine engine(r, start, 200000 + 32ull * max_steps);
  RunRecord rec;
  rec.seed = seed;
  for (rec.steps = 0; rec.steps < max_steps; ++rec.steps)
    if (!engine.step(policy, rng)) {
      rec.terminated = !engine.exhausted();
      return rec;
    }
  rec.terminated = !engine.exhausted() && !engine.has_redex(policy);
  return rec;
}

Estimate estimate_termination_prob(const PTRS& r, const Term& start, const Policy& policy,
                                   int runs, int max_steps, std::uint64_t seed) {
  if (runs < 1) throw std::invalid_argument("estimate needs at least one run");
  Estimate est;
  std::uint64_t state = seed;
  int terminated = 0;
  for (int i = 0; i < runs; ++i) {
    RunRecord rec = sample_run(r, start, policy, max_steps, splitmix64(state));
    terminated += rec.terminated ? 1 : 0;
    est.runs.push_back(rec);
  }
  est.fraction = Rational(terminated, runs);
  double p = est.fraction.to_double();
  est.half_width = 1.96 * std::sqrt(p * (1.0 - p) / runs);
  return est;
}

std::string runs_to_csv(const std::vector<RunRecord>& runs) {
  std::string s = "seed,steps,terminated\n";
  for (const RunRecord& r : runs)
    s += std::to_string(r.seed) + "," + std::to_string(r.steps) + "," +
         (r.terminated ? "1" : "0") + "\n";
  return s;
}

TreeNode build_rst(const PTRS& r, const Term& start, const Policy& policy, int depth) {
  TreeNode node;
  node.term = start;
  node.probability = Rational(1);
  std::function<void(TreeNode&, int)> grow = [&](TreeNode& n, int remaining) {
    auto step = select_step(n.term, r, policy, nullptr);
    if (!step || remaining == 0) {
      n.mark = TreeNode::Mark::leaf;
      return;
    }
    n.mark = TreeNode::Mark::N;
    for (const auto& [p, t] : ptrs_apply(n.term, r, *step)) {
      TreeNode child;
      child.probability = n.probability * p;
      child.term = t;
      grow(child, remaining - 1);
      n.children.push_back(std::move(child));
    }
  };
  grow(node, depth);
  return node;
}

Rational expand_bounded(const PTRS& r, const Term& start, const Policy& policy, int depth) {
  if (policy.pos == Policy::Pos::random)
    throw std::invalid_argument("bounded expansion needs a deterministic policy");
  std::map<std::pair<std::string, int>, Rational> memo;
  std::function<Rational(const Term&, int)> mass = [&](const Term& t, int remaining) -> Rational {
    auto step = select_step(t, r, policy, nullptr);
    if (!step) return Rational(1);
    if (remaining == 0) return Rational(0);
    auto key = std::make_pair(t.str(), remaining);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Rational total(0);
    for (const auto& [p, child] : ptrs_apply(t, r, *step)) total += p * mass(child, remaining - 1);
    memo.emplace(key, total);
    return total;
  };
  return mass(start, depth);
}

Rational expand_bounded_adp(const ADPProblem& p, const Term& start, const Policy& policy,
                            int depth, bool include_nf) {
  if (policy.pos == Policy::Pos::random)
    throw std::invalid_argument("bounded expansion needs a deterministic policy");
  std::map<std::pair<std::string, int>, Rational> memo;
  std::function<Rational(const Term&, int)> mass = [&](const Term& t, int remaining) -> Rational {
    std::vector<StepOutcome> steps = p.strategy == Strategy::innermost
                                         ? adp_rewrite_innermost(t, p)
                                         : adp_rewrite_full(t, p, include_nf);
    if (steps.empty()) return Rational(1);
    if (remaining == 0) return Rational(0);
    auto key = std::make_pair(t.str(), remaining);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    auto order = position_order(t, policy.pos == Policy::Pos::leftmost_innermost);
    int n = static_cast<int>(p.adps.size());
    auto key_of = [&](const StepOutcome& s) {
      int pr = priority_rank(policy, s.adp_index, n);
      int po = order.at(s.pos);
      return policy.priority_first ? std::pair<int, int>(pr, po) : std::pair<int, int>(po, pr);
    };
    const StepOutcome& chosen = *std::min_element(
        steps.begin(), steps.end(),
        [&](const StepOutcome& a, const StepOutcome& b) { return key_of(a) < key_of(b); });
    Rational total(0);
    for (const auto& [prob, child] : chosen.result) total += prob * mass(child, remaining - 1);
    memo.emplace(key, total);
    return total;
  };
  return mass(start, depth);
}

Rational expand_bounded_min(const PTRS& r, const Term& start, int depth,
                            std::size_t node_budget, bool* exact) {
  std::map<std::pair<std::string, int>, Rational> memo;
  std::size_t nodes = 0;
  bool truncated = false;
  std::function<Rational(const Term&, int)> value = [&](const Term& t, int remaining) -> Rational {
    auto redexes = ptrs_redexes(t, r, false);
    if (redexes.empty()) return Rational(1);
    if (remaining == 0) return Rational(0);
    auto key = std::make_pair(t.str(), remaining);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    if (++nodes > node_budget) {
      truncated = true;
      return expand_bounded(r, t, Policy{}, remaining);
    }
    std::optional<Rational> best;
    for (const PtrsRedex& redex : redexes) {
      Rational total(0);
      for (const auto& [p, child] : ptrs_apply(t, r, redex))
        total += p * value(child, remaining - 1);
      if (!best || total < *best) best = total;
    }
    memo.emplace(key, *best);
    return *best;
  };
  Rational out = value(start, depth);
  if (exact) *exact = !truncated;
  return out;
}

bool weakly_spare_up_to(const PTRS& r, const Term& start, int depth) {
  std::map<std::string, int> explored;  // term -> largest remaining budget walked
  std::function<bool(const Term&, int)> walk = [&](const Term& t, int remaining) -> bool {
    auto [it, fresh] = explored.emplace(t.str(), remaining);
    if (!fresh) {
      if (it->second >= remaining) return true;
      it->second = remaining;
    }
    if (remaining == 0) return true;
    for (const PtrsRedex& redex : ptrs_redexes(t, r, false)) {
      const PRule& rule = r.rules[redex.rule];
      for (const auto& [p, branch] : rule.rhs.branches) {
        (void)p;
        for (const std::string& x : variables(branch)) {
          if (variable_count(branch, x) <= variable_count(rule.lhs, x)) continue;
          if (!is_normal_form(redex.subst.at(x), r)) return false;
        }
      }
      for (const auto& [p, child] : ptrs_apply(t, r, redex)) {
        (void)p;
        if (!walk(child, remaining - 1)) return false;
      }
    }
    return true;
  };
  return walk(start, depth);
}

}  // namespace adp
