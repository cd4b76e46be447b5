#pragma once

#include <random>
#include <set>
#include <vector>

#include "groundwork/design.hpp"

namespace fixtures {

using namespace groundwork::ludics;

inline Address A(std::initializer_list<std::uint32_t> xs) { return Address(xs); }

// The pair of designs cut on ε used as the running interaction example.
//   left  ⊢ε : (ε,{1}) then ξ1 ⊢ with branches {1}: † and {3}: (ξ13, ∅)
//   right ε⊢ : branches {1}: (ξ1,{1}) → ξ11 ⊢ {∅: †}, {2}: (ξ2,{1}) → ξ21 ⊢ {∅: †}
inline Design example_left() {
  NodePtr n1 = negative_node(A({1}), {{{1}, daimon_node()}, {{3}, positive_node(A({1, 3}), {}, {})}});
  return Design{positive_base({A({})}), positive_node(A({}), {1}, {n1})};
}

inline Design example_right() {
  auto arm = [](std::uint32_t i) {
    NodePtr leaf = negative_node(A({i, 1}), {{{}, daimon_node()}});
    return positive_node(A({i}), {1}, {leaf});
  };
  return Design{negative_base(A({})), negative_node(A({}), {{{1}, arm(1)}, {{2}, arm(2)}})};
}

// Cuts the copycat unfolding after `k` negative layers.
inline NodePtr truncate_fax(const NodePtr& n, std::size_t k) {
  std::map<Ramification, NodePtr> branches;
  for (const auto& [I, b] : n->branches) {
    if (k == 0) {
      branches[I] = fid_node();
      continue;
    }
    std::vector<NodePtr> kids;
    for (const auto& c : b->children) kids.push_back(truncate_fax(c, k - 1));
    branches[I] = positive_node(b->focus, b->ramification, std::move(kids));
  }
  return negative_node(n->focus, std::move(branches));
}


// Random valid designs. Leaves are drawn more often as the budget shrinks.
class DesignGen {
 public:
  DesignGen(unsigned seed, std::vector<Ramification> pool) : rng_(seed), pool_(std::move(pool)) {}

  Design positive(const Address& xi, int depth) {
    return Design{positive_base({xi}), pos({xi}, depth)};
  }
  Design negative(const Address& xi, int depth) { return Design{negative_base(xi), neg(xi, {}, depth)}; }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
  std::vector<Ramification> pool_;

  NodePtr pos(const std::set<Address>& delta, int depth) {
    const unsigned r = rng_() % 8;
    if (depth <= 1 || delta.empty() || r < 2) return r % 2 ? daimon_node() : (rng_() % 3 ? daimon_node() : fid_node());
    std::vector<Address> foci(delta.begin(), delta.end());
    const Address focus = foci[rng_() % foci.size()];
    const Ramification& I = pool_[rng_() % pool_.size()];
    std::vector<std::set<Address>> parts(I.size());
    for (const auto& a : delta) {
      if (a == focus || I.empty()) continue;
      if (rng_() % 3 == 0) continue;  // dropped from every premise
      parts[rng_() % I.size()].insert(a);
    }
    std::vector<NodePtr> kids;
    std::size_t k = 0;
    for (auto i : I) kids.push_back(neg(child(focus, i), parts[k++], depth - 1));
    return positive_node(focus, I, std::move(kids));
  }

  NodePtr neg(const Address& xi, const std::set<Address>& delta, int depth) {
    std::map<Ramification, NodePtr> branches;
    if (depth > 1)
      for (const auto& I : pool_) {
        if (rng_() % 2) continue;
        std::set<Address> ctx = delta;
        for (const auto& a : star(xi, I)) ctx.insert(a);
        branches[I] = pos(ctx, depth - 1);
      }
    return negative_node(xi, std::move(branches));
  }
};

}  // namespace fixtures
