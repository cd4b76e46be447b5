#pragma once

#include <optional>
#include <vector>

#include "groundwork/design.hpp"

namespace fixtures {

using namespace groundwork::ludics;

// Normalization by rewriting the whole set of designs: at each step the
// principal design and its partner are replaced by the partner's branch
// and one design per premise of the principal rule.
struct NaiveOutcome {
  enum class Tag { Converged, Diverged, Fuel } tag = Tag::Converged;
  std::vector<std::pair<Address, Ramification>> consumed;
};

inline void naive_foci(const NodePtr& n, std::set<Address>& out) {
  if (n->kind == Node::Kind::Positive) out.insert(n->focus);
  for (const auto& c : n->children) naive_foci(c, out);
  for (const auto& kv : n->branches) naive_foci(kv.second, out);
}

inline NaiveOutcome naive_normalize(std::vector<Design> net, std::size_t fuel = 100000) {
  NaiveOutcome out;
  for (;;) {
    std::set<Address> positives;
    for (const auto& d : net) positives.insert(d.base.positive.begin(), d.base.positive.end());
    std::optional<std::size_t> principal;
    for (std::size_t k = 0; k < net.size(); ++k)
      if (!net[k].base.negative || !positives.count(*net[k].base.negative)) principal = k;
    if (!principal) throw std::logic_error("no principal design");
    const Design p = net[*principal];
    if (p.root->kind == Node::Kind::Daimon) return out;
    out.tag = NaiveOutcome::Tag::Diverged;
    if (p.root->kind != Node::Kind::Positive) return out;
    const Address xi = p.root->focus;
    std::optional<std::size_t> partner;
    for (std::size_t k = 0; k < net.size(); ++k)
      if (net[k].base.negative == xi) partner = k;
    if (!partner) return out;
    const Design q = net[*partner];
    auto b = q.root->branches.find(p.root->ramification);
    if (b == q.root->branches.end()) return out;
    if (out.consumed.size() >= fuel) {
      out.tag = NaiveOutcome::Tag::Fuel;
      return out;
    }
    out.tag = NaiveOutcome::Tag::Converged;
    out.consumed.push_back({xi, p.root->ramification});

    std::vector<Design> next;
    for (std::size_t k = 0; k < net.size(); ++k)
      if (k != *principal && k != *partner) next.push_back(net[k]);
    std::set<Address> delta = q.base.positive;
    for (auto i : p.root->ramification) delta.insert(child(xi, i));
    next.push_back(Design{positive_base(delta), b->second});
    for (const auto& c : p.root->children) {
      std::set<Address> used, ctx;
      naive_foci(c, used);
      for (const auto& a : p.base.positive)
        if (a != xi && used.count(a)) ctx.insert(a);
      next.push_back(Design{negative_base(c->focus, ctx), c});
    }
    net = std::move(next);
  }
}

// Every design of depth at most `depth` on a one-address base, by direct
// recursion over the rule schemas.
class Universe {
 public:
  explicit Universe(std::vector<Ramification> pool) : pool_(std::move(pool)) {}

  std::vector<NodePtr> positive(const std::set<Address>& delta, int depth) const {
    std::vector<NodePtr> out{daimon_node(), fid_node()};
    if (depth < 1) return {};
    for (const auto& focus : delta)
      for (const auto& I : pool_) {
        if (depth < 2 && !I.empty()) continue;
        std::set<Address> rest = delta;
        rest.erase(focus);
        std::vector<Address> ctx(rest.begin(), rest.end());
        // assign each context address to one premise or to none
        std::vector<std::uint32_t> idx(I.begin(), I.end());
        std::size_t assignments = 1;
        for (std::size_t k = 0; k < ctx.size(); ++k) assignments *= idx.size() + 1;
        for (std::size_t code = 0; code < assignments; ++code) {
          std::vector<std::set<Address>> parts(idx.size());
          std::size_t c = code;
          for (const auto& a : ctx) {
            const std::size_t slot = c % (idx.size() + 1);
            c /= idx.size() + 1;
            if (slot) parts[slot - 1].insert(a);
          }
          std::vector<std::vector<NodePtr>> options;
          for (std::size_t k = 0; k < idx.size(); ++k)
            options.push_back(negative(child(focus, idx[k]), parts[k], depth - 1));
          product(options, [&](std::vector<NodePtr> kids) {
            // contexts must be exactly the addresses each premise uses
            for (std::size_t k = 0; k < kids.size(); ++k) {
              std::set<Address> used;
              naive_foci(kids[k], used);
              for (const auto& a : parts[k])
                if (!used.count(a)) return;
            }
            out.push_back(positive_node(focus, I, std::move(kids)));
          });
        }
      }
    return out;
  }

  std::vector<NodePtr> negative(const Address& xi, const std::set<Address>& delta, int depth) const {
    if (depth < 1) return {};
    std::vector<std::vector<NodePtr>> options;  // per pool entry: absent (nullptr) or a body
    for (const auto& I : pool_) {
      std::vector<NodePtr> opt{nullptr};
      std::set<Address> ctx = delta;
      for (auto i : I) ctx.insert(child(xi, i));
      for (auto& b : positive(ctx, depth - 1)) opt.push_back(b);
      options.push_back(std::move(opt));
    }
    std::vector<NodePtr> out;
    product(options, [&](const std::vector<NodePtr>& pick) {
      std::map<Ramification, NodePtr> branches;
      for (std::size_t k = 0; k < pick.size(); ++k)
        if (pick[k]) branches[pool_[k]] = pick[k];
      out.push_back(negative_node(xi, std::move(branches)));
    });
    return out;
  }

 private:
  std::vector<Ramification> pool_;

  template <class F>
  static void product(const std::vector<std::vector<NodePtr>>& options, F&& f) {
    for (const auto& o : options)
      if (o.empty()) return;
    std::vector<std::size_t> at(options.size(), 0);
    for (;;) {
      std::vector<NodePtr> pick;
      for (std::size_t k = 0; k < options.size(); ++k) pick.push_back(options[k][at[k]]);
      f(std::move(pick));
      std::size_t k = 0;
      while (k < options.size() && ++at[k] == options[k].size()) at[k++] = 0;
      if (k == options.size()) return;
    }
  }
};

}  // namespace fixtures
