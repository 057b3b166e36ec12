// Internal fast path for sampling runs: mutable tree with interned symbols,
// per-node match masks, and incremental redex selection. Not part of the
// public headers; the value-typed Term stays the interface everywhere else.
#ifndef ADP_SIM_ENGINE_HPP
#define ADP_SIM_ENGINE_HPP

#include <deque>
#include <map>
#include <random>

#include "adp/simulate.hpp"

namespace adp::sim {

struct Node {
  int sym = -1;        // interned symbol, or -1 for a variable leaf
  Node* parent = nullptr;
  int slot = 0;        // index in parent->kids
  std::uint32_t mask = 0;  // rules matching here
  bool alive = true;
  std::vector<Node*> kids;
};

class Engine {
 public:
  // node_budget caps the arena; a run that outgrows it counts as cut off
  // (non-terminated), like the step cutoff.
  Engine(const PTRS& r, const Term& start, std::size_t node_budget = 0);

  // One rewrite step under the policy; false when no redex is left or the
  // node budget is exhausted.
  bool step(const Policy& policy, std::mt19937_64& rng);
  bool has_redex(const Policy& policy);
  bool exhausted() const { return exhausted_; }

 private:
  struct Pattern {
    int sym;
    std::vector<Pattern> kids;
    int var = -1;  // variable id when sym < 0
  };

  int intern(const std::string& name);
  Node* build(const Term& t);
  Node* clone(const Node* n);
  void release(Node* n);
  bool matches(const Node* n, const Pattern& p,
               std::vector<const Node*>* bind = nullptr) const;
  void compute_mask(Node* n);
  void refresh_rule_stacks(Node* n, std::uint32_t before);

  Node* rewrite_at(Node* v, int rule, std::mt19937_64& rng);

  // cursor-based selection for the leftmost strategies
  Node* next_preorder_redex();
  Node* next_postorder_redex();
  Node* pick_priority(const Policy& policy);
  Node* pick_random(std::mt19937_64& rng);
  void collect_redexes(Node* n, std::vector<std::pair<Node*, int>>& out);

  const PTRS& ptrs_;
  std::map<std::string, int> symbol_ids_;
  std::vector<std::vector<Pattern>> rule_lhs_;   // one pattern per rule
  std::vector<std::vector<int>> rule_var_count_; // per rule, per variable id
  struct RhsBranch {
    Rational prob;
    Pattern term;  // variables refer to lhs variable ids
  };
  std::vector<std::vector<RhsBranch>> rule_rhs_;
  int max_pattern_depth_ = 1;

  std::deque<Node> arena_;
  Node* root_ = nullptr;
  std::size_t node_budget_ = 0;
  bool exhausted_ = false;

  // cursor stack for leftmost strategies; kids progress per frame
  struct Frame {
    Node* node;
    int next_kid = 0;
    bool self_done = false;  // for post-order
  };
  std::vector<Frame> cursor_;
  bool cursor_valid_ = false;
  Policy::Pos cursor_mode_ = Policy::Pos::leftmost_outermost;

  std::vector<std::vector<Node*>> rule_stacks_;  // lazy, for priority-first
};

}  // namespace adp::sim

#endif
