#include "sim_engine.hpp"

#include <functional>
#include <stdexcept>

namespace adp::sim {

namespace {

bool node_equal(const Node* a, const Node* b) {
  if (a->sym != b->sym || a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!node_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

}  // namespace

int Engine::intern(const std::string& name) {
  auto [it, inserted] = symbol_ids_.emplace(name, static_cast<int>(symbol_ids_.size()));
  (void)inserted;
  return it->second;
}

Engine::Engine(const PTRS& r, const Term& start, std::size_t node_budget)
    : ptrs_(r), node_budget_(node_budget) {
  rule_lhs_.resize(r.rules.size());
  rule_rhs_.resize(r.rules.size());
  rule_stacks_.assign(r.rules.size(), {});
  if (r.rules.size() > 32) throw std::invalid_argument("sampling supports at most 32 rules");

  for (std::size_t i = 0; i < r.rules.size(); ++i) {
    std::map<std::string, int> var_ids;
    std::function<Pattern(const Term&)> compile = [&](const Term& t) -> Pattern {
      Pattern p;
      if (t.is_var()) {
        p.sym = -1;
        auto [it, ins] = var_ids.emplace(t.name(), static_cast<int>(var_ids.size()));
        (void)ins;
        p.var = it->second;
        return p;
      }
      p.sym = intern(t.name());
      for (const Term& a : t.args()) p.kids.push_back(compile(a));
      return p;
    };
    rule_lhs_[i].push_back(compile(r.rules[i].lhs));
    std::function<int(const Pattern&)> height = [&](const Pattern& p) -> int {
      int h = 1;
      for (const Pattern& k : p.kids) h = std::max(h, 1 + height(k));
      return h;
    };
    max_pattern_depth_ = std::max(max_pattern_depth_, height(rule_lhs_[i][0]));
    for (const auto& [prob, branch] : r.rules[i].rhs.branches)
      rule_rhs_[i].push_back({prob, compile(branch)});
  }
  root_ = build(start);
  std::function<void(Node*)> init = [&](Node* n) {
    for (Node* k : n->kids) init(k);
    compute_mask(n);
    refresh_rule_stacks(n, 0);
  };
  init(root_);
}

Node* Engine::build(const Term& t) {
  arena_.emplace_back();
  Node* n = &arena_.back();
  if (t.is_var()) {
    n->sym = -1;
  } else {
    n->sym = intern(t.name());
    for (int i = 0; i < t.arity(); ++i) {
      Node* k = build(t.args()[i]);
      k->parent = n;
      k->slot = i;
      n->kids.push_back(k);
    }
  }
  return n;
}

Node* Engine::clone(const Node* src) {
  arena_.emplace_back();
  Node* n = &arena_.back();
  n->sym = src->sym;
  n->mask = src->mask;
  for (std::size_t i = 0; i < src->kids.size(); ++i) {
    Node* k = clone(src->kids[i]);
    k->parent = n;
    k->slot = static_cast<int>(i);
    n->kids.push_back(k);
  }
  refresh_rule_stacks(n, 0);
  return n;
}

void Engine::release(Node* n) {
  if (!n) return;
  n->alive = false;
  for (Node* k : n->kids) release(k);
}

bool Engine::matches(const Node* n, const Pattern& p, std::vector<const Node*>* bind) const {
  if (p.sym < 0) {
    if (!bind) return true;
    if (p.var >= static_cast<int>(bind->size())) bind->resize(p.var + 1, nullptr);
    const Node*& slot = (*bind)[p.var];
    if (!slot) {
      slot = n;
      return true;
    }
    return node_equal(slot, n);
  }
  if (n->sym != p.sym || n->kids.size() != p.kids.size()) return false;
  for (std::size_t i = 0; i < p.kids.size(); ++i)
    if (!matches(n->kids[i], p.kids[i], bind)) return false;
  return true;
}

void Engine::compute_mask(Node* n) {
  n->mask = 0;
  if (n->sym < 0) return;
  for (std::size_t i = 0; i < rule_lhs_.size(); ++i) {
    std::vector<const Node*> bind;
    if (matches(n, rule_lhs_[i][0], &bind)) n->mask |= 1u << i;
  }
}

void Engine::refresh_rule_stacks(Node* n, std::uint32_t before) {
  std::uint32_t gained = n->mask & ~before;
  for (std::size_t i = 0; i < rule_stacks_.size(); ++i)
    if (gained & (1u << i)) rule_stacks_[i].push_back(n);
}

Node* Engine::rewrite_at(Node* v, int rule, std::mt19937_64& rng) {
  std::vector<const Node*> bind;
  if (!matches(v, rule_lhs_[rule][0], &bind))
    throw std::logic_error("rewrite_at: stale redex");

  // sample a branch
  const auto& branches = rule_rhs_[rule];
  std::size_t chosen = branches.size() - 1;
  {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double x = u(rng);
    double acc = 0.0;
    for (std::size_t j = 0; j < branches.size(); ++j) {
      acc += branches[j].prob.to_double();
      if (x < acc) {
        chosen = j;
        break;
      }
    }
  }

  // build the instantiated branch; the first use of a variable moves the
  // bound subtree, further uses clone it
  std::vector<char> used(bind.size(), 0);
  std::function<Node*(const Pattern&)> instantiate = [&](const Pattern& p) -> Node* {
    if (p.sym < 0) {
      Node* b = const_cast<Node*>(bind[p.var]);
      if (!used[p.var]) {
        used[p.var] = 1;
        if (b->parent) b->parent->kids[b->slot] = nullptr;  // detach
        return b;
      }
      return clone(b);
    }
    arena_.emplace_back();
    Node* n = &arena_.back();
    n->sym = p.sym;
    for (std::size_t i = 0; i < p.kids.size(); ++i) {
      Node* k = instantiate(p.kids[i]);
      k->parent = n;
      k->slot = static_cast<int>(i);
      n->kids.push_back(k);
    }
    compute_mask(n);
    refresh_rule_stacks(n, 0);
    return n;
  };
  Node* u = instantiate(branches[chosen].term);

  Node* parent = v->parent;
  int slot = v->slot;
  release(v);
  u->parent = parent;
  u->slot = slot;
  if (parent)
    parent->kids[slot] = u;
  else
    root_ = u;

  // only ancestors within the pattern height can change status
  Node* a = parent;
  for (int d = 1; d < max_pattern_depth_ && a; ++d, a = a->parent) {
    std::uint32_t before = a->mask;
    compute_mask(a);
    refresh_rule_stacks(a, before);
  }
  return u;
}

Node* Engine::next_preorder_redex() {
  if (!cursor_valid_ || cursor_mode_ != Policy::Pos::leftmost_outermost) {
    cursor_.clear();
    cursor_.push_back({root_, 0, false});
    cursor_valid_ = true;
    cursor_mode_ = Policy::Pos::leftmost_outermost;
  }
  while (!cursor_.empty()) {
    Frame& f = cursor_.back();
    if (!f.self_done) {
      f.self_done = true;
      if (f.node->mask) return f.node;
    }
    if (f.next_kid < static_cast<int>(f.node->kids.size())) {
      Node* k = f.node->kids[f.next_kid++];
      cursor_.push_back({k, 0, false});
    } else {
      cursor_.pop_back();
    }
  }
  return nullptr;
}

Node* Engine::next_postorder_redex() {
  if (!cursor_valid_ || cursor_mode_ != Policy::Pos::leftmost_innermost) {
    cursor_.clear();
    cursor_.push_back({root_, 0, false});
    cursor_valid_ = true;
    cursor_mode_ = Policy::Pos::leftmost_innermost;
  }
  while (!cursor_.empty()) {
    Frame& f = cursor_.back();
    if (f.next_kid < static_cast<int>(f.node->kids.size())) {
      Node* k = f.node->kids[f.next_kid++];
      cursor_.push_back({k, 0, false});
    } else if (!f.self_done) {
      f.self_done = true;
      if (f.node->mask) return f.node;
    } else {
      cursor_.pop_back();
    }
  }
  return nullptr;
}

Node* Engine::pick_priority(const Policy& policy) {
  auto try_rule = [&](int rule) -> Node* {
    auto& stack = rule_stacks_[rule];
    while (!stack.empty()) {
      Node* n = stack.back();
      if (n->alive && (n->mask & (1u << rule))) return n;
      stack.pop_back();
    }
    return nullptr;
  };
  for (int rule : policy.rule_priority)
    if (Node* n = try_rule(rule)) return n;
  for (std::size_t i = 0; i < rule_stacks_.size(); ++i)
    if (Node* n = try_rule(static_cast<int>(i))) return n;
  return nullptr;
}

void Engine::collect_redexes(Node* n, std::vector<std::pair<Node*, int>>& out) {
  for (std::size_t i = 0; i < rule_lhs_.size(); ++i)
    if (n->mask & (1u << i)) out.emplace_back(n, static_cast<int>(i));
  for (Node* k : n->kids) collect_redexes(k, out);
}

Node* Engine::pick_random(std::mt19937_64& rng) {
  std::vector<std::pair<Node*, int>> all;
  collect_redexes(root_, all);
  if (all.empty()) return nullptr;
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  return all[pick(rng)].first;
}

bool Engine::has_redex(const Policy& policy) {
  switch (policy.pos) {
    case Policy::Pos::leftmost_outermost:
      if (policy.priority_first) return pick_priority(policy) != nullptr;
      return next_preorder_redex() != nullptr;
    case Policy::Pos::leftmost_innermost:
      if (policy.priority_first)
        throw std::invalid_argument("priority-first needs the outermost or random strategy");
      return next_postorder_redex() != nullptr;
    case Policy::Pos::random: {
      std::vector<std::pair<Node*, int>> all;
      collect_redexes(root_, all);
      return !all.empty();
    }
  }
  return false;
}

bool Engine::step(const Policy& policy, std::mt19937_64& rng) {
  if (node_budget_ && arena_.size() > node_budget_) {
    exhausted_ = true;
    return false;
  }
  Node* v = nullptr;
  if (policy.pos == Policy::Pos::random) {
    v = pick_random(rng);
  } else if (policy.priority_first) {
    if (policy.pos == Policy::Pos::leftmost_innermost)
      throw std::invalid_argument("priority-first needs the outermost or random strategy");
    v = pick_priority(policy);
    cursor_valid_ = false;
  } else {
    v = policy.pos == Policy::Pos::leftmost_outermost ? next_preorder_redex()
                                                      : next_postorder_redex();
  }
  if (!v) return false;

  // rule choice at the selected node: priority order, then rule index
  int rule = -1;
  for (int r : policy.rule_priority)
    if (v->mask & (1u << r)) {
      rule = r;
      break;
    }
  if (rule < 0)
    for (std::size_t i = 0; i < rule_lhs_.size(); ++i)
      if (v->mask & (1u << i)) {
        rule = static_cast<int>(i);
        break;
      }

  Node* u = rewrite_at(v, rule, rng);

  if (cursor_valid_) {
    // the fired node sits on top of the cursor; continue inside the new
    // subtree, re-walking it from scratch
    if (!cursor_.empty() && cursor_.back().node == v) {
      cursor_.back() = {u, 0, false};
      if (cursor_mode_ == Policy::Pos::leftmost_outermost) {
        // an ancestor within the pattern height may have become a redex; the
        // highest such one is next in leftmost-outermost order
        int rewind = -1;
        int levels = std::min<int>(max_pattern_depth_ - 1,
                                   static_cast<int>(cursor_.size()) - 1);
        for (int d = 1; d <= levels; ++d) {
          Frame& f = cursor_[cursor_.size() - 1 - d];
          if (f.node->mask) rewind = static_cast<int>(cursor_.size()) - 1 - d;
        }
        if (rewind >= 0) {
          cursor_.resize(rewind + 1);
          cursor_.back().self_done = false;
        }
      }
    } else {
      cursor_valid_ = false;  // defensive; selection always leaves v on top
    }
  }
  return true;
}

}  // namespace adp::sim
