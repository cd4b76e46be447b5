#include "groundwork/behaviours.hpp"

#include <algorithm>

namespace groundwork::ludics {

using K = Node::Kind;

namespace {

void used_foci(const NodePtr& n, std::set<Address>& out) {
  if (n->is(K::Positive)) out.insert(n->focus);
  for (const auto& c : n->children) used_foci(c, out);
  for (const auto& [I, b] : n->branches) used_foci(b, out);
}

class Enumerator {
 public:
  explicit Enumerator(const UniverseBounds& b) : b_(b) {}

  std::vector<NodePtr> positive(const std::set<Address>& delta, std::size_t depth) {
    std::vector<NodePtr> out;
    if (depth == 0) return out;
    out.push_back(daimon_node());
    out.push_back(fid_node());
    for (const auto& focus : delta) {
      std::vector<Address> rest;
      for (const auto& a : delta)
        if (a != focus) rest.push_back(a);
      for (const auto& I : b_.pool) {
        if (I.empty()) {
          add(out, positive_node(focus, I, {}));
          continue;
        }
        if (depth < 2) continue;
        const std::vector<std::uint32_t> idx(I.begin(), I.end());
        // Each remaining address goes to one premise or is dropped; a premise
        // must then act on every address it receives.
        std::vector<std::size_t> slot(rest.size(), 0);
        for (;;) {
          std::vector<std::set<Address>> parts(idx.size());
          for (std::size_t k = 0; k < rest.size(); ++k)
            if (slot[k]) parts[slot[k] - 1].insert(rest[k]);
          std::vector<std::vector<NodePtr>> options;
          for (std::size_t k = 0; k < idx.size(); ++k) {
            std::vector<NodePtr> exact;
            for (auto& n : negative(child(focus, idx[k]), parts[k], depth - 1)) {
              std::set<Address> used;
              used_foci(n, used);
              if (std::includes(used.begin(), used.end(), parts[k].begin(), parts[k].end()))
                exact.push_back(std::move(n));
            }
            options.push_back(std::move(exact));
          }
          product(options, [&](std::vector<NodePtr> kids) { add(out, positive_node(focus, I, std::move(kids))); });
          std::size_t k = 0;
          while (k < slot.size() && ++slot[k] == idx.size() + 1) slot[k++] = 0;
          if (k == slot.size()) break;
        }
      }
    }
    return out;
  }

  std::vector<NodePtr> negative(const Address& xi, const std::set<Address>& delta, std::size_t depth) {
    std::vector<NodePtr> out;
    if (depth == 0) return out;
    std::vector<std::vector<NodePtr>> options;
    for (const auto& I : b_.pool) {
      std::set<Address> ctx = delta;
      for (const auto& a : star(xi, I)) ctx.insert(a);
      std::vector<NodePtr> opt{nullptr};
      for (auto& n : positive(ctx, depth - 1)) opt.push_back(std::move(n));
      options.push_back(std::move(opt));
    }
    product(options, [&](const std::vector<NodePtr>& pick) {
      std::map<Ramification, NodePtr> branches;
      for (std::size_t k = 0; k < pick.size(); ++k)
        if (pick[k]) branches[b_.pool[k]] = pick[k];
      add(out, negative_node(xi, std::move(branches)));
    });
    return out;
  }

 private:
  const UniverseBounds& b_;

  void add(std::vector<NodePtr>& out, NodePtr n) const {
    if (out.size() >= b_.cap)
      throw UniverseTooLarge("design universe exceeds " + std::to_string(b_.cap) + " designs");
    out.push_back(std::move(n));
  }

  template <class F>
  void product(const std::vector<std::vector<NodePtr>>& options, F&& f) const {
    std::size_t total = 1;
    for (const auto& o : options) {
      if (o.empty()) return;
      total *= o.size();
      if (total > b_.cap)
        throw UniverseTooLarge("design universe exceeds " + std::to_string(b_.cap) + " designs");
    }
    std::vector<std::size_t> at(options.size(), 0);
    for (;;) {
      std::vector<NodePtr> pick;
      pick.reserve(options.size());
      for (std::size_t k = 0; k < options.size(); ++k) pick.push_back(options[k][at[k]]);
      f(std::move(pick));
      std::size_t k = 0;
      while (k < options.size() && ++at[k] == options[k].size()) at[k++] = 0;
      if (k == options.size()) return;
    }
  }
};

void require_single_address(const Pitchfork& p) {
  const bool ok = p.negative ? p.positive.empty() : p.positive.size() == 1;
  if (!ok) throw std::invalid_argument("universe base must be ⊢ξ or ξ⊢, got " + to_string(p));
}

}  // namespace

std::vector<Design> enumerate_universe(const UniverseBounds& bounds) {
  if (auto r = validate_pitchfork(bounds.base); !ok(r)) throw std::invalid_argument(r.front().message);
  if (bounds.max_depth == 0) throw std::invalid_argument("universe depth must be at least 1");
  Enumerator e(bounds);
  std::vector<NodePtr> bodies = bounds.base.negative ? e.negative(*bounds.base.negative, bounds.base.positive, bounds.max_depth)
                                                     : e.positive(bounds.base.positive, bounds.max_depth);
  std::vector<Design> out;
  out.reserve(bodies.size());
  for (auto& n : bodies) out.push_back(Design{bounds.base, std::move(n)});
  std::sort(out.begin(), out.end());
  return out;
}

OrthogonalSet orthogonal_set(const std::vector<Design>& E, const UniverseBounds& bounds) {
  if (E.empty()) throw std::invalid_argument("orthogonal of an empty set");
  for (const auto& d : E)
    if (!(d.base == E.front().base)) throw std::invalid_argument("designs do not share a base");
  require_single_address(E.front().base);
  OrthogonalSet out;
  for (auto& cand : enumerate_universe(bounds.with_base(dual(E.front().base)))) {
    bool keep = true;
    for (const auto& d : E) {
      const Verdict v = orthogonal(cand, d, bounds.fuel);
      if (v == Verdict::Yes) continue;
      if (v == Verdict::Unknown) out.inconclusive = true;
      keep = false;
      break;
    }
    if (keep) out.designs.push_back(std::move(cand));
  }
  return out;
}

OrthogonalSet biorthogonal(const std::vector<Design>& E, const UniverseBounds& bounds) {
  OrthogonalSet first = orthogonal_set(E, bounds);
  if (first.designs.empty()) {
    // Every design is orthogonal to the empty set.
    OrthogonalSet all{enumerate_universe(bounds.with_base(E.front().base)), first.inconclusive};
    return all;
  }
  OrthogonalSet second = orthogonal_set(first.designs, bounds);
  second.inconclusive = second.inconclusive || first.inconclusive;
  return second;
}

// ---------------------------------------------------------------------------
// Behaviours

std::vector<CounterNet> counter_universe(const Pitchfork& base, const UniverseBounds& bounds) {
  std::vector<std::vector<Design>> parts;
  if (base.negative) parts.push_back(enumerate_universe(bounds.with_base(positive_base({*base.negative}))));
  for (const auto& a : base.positive) parts.push_back(enumerate_universe(bounds.with_base(negative_base(a))));
  std::size_t total = 1;
  for (const auto& p : parts) {
    total *= p.size();
    if (total > bounds.cap)
      throw UniverseTooLarge("counter-net universe exceeds " + std::to_string(bounds.cap) + " nets");
  }
  std::vector<CounterNet> out;
  if (total == 0) return out;
  std::vector<std::size_t> at(parts.size(), 0);
  for (;;) {
    CounterNet c;
    for (std::size_t k = 0; k < parts.size(); ++k) c.push_back(parts[k][at[k]]);
    out.push_back(std::move(c));
    std::size_t k = 0;
    while (k < parts.size() && ++at[k] == parts[k].size()) at[k++] = 0;
    if (k == parts.size()) break;
  }
  return out;
}

namespace {

Verdict net_verdict(const Design& d, const CounterNet& c, std::size_t fuel) {
  std::vector<const Design*> net{&d};
  for (const auto& e : c) net.push_back(&e);
  return closed_verdict(net, fuel);
}

}  // namespace

Behaviour::Behaviour(std::vector<Design> generators, UniverseBounds bounds)
    : generators_(std::move(generators)), bounds_(std::move(bounds)) {
  if (!generators_.empty()) bounds_.base = generators_.front().base;
  for (const auto& g : generators_)
    if (!(g.base == bounds_.base)) throw std::invalid_argument("generators do not share a base");
  for (auto& c : counter_universe(bounds_.base, bounds_)) {
    if (std::any_of(c.begin(), c.end(), [](const Design& e) { return e.root->is(K::Fid); })) continue;
    bool keep = true;
    for (const auto& g : generators_) {
      const Verdict v = net_verdict(g, c, bounds_.fuel);
      if (v == Verdict::Yes) continue;
      if (v == Verdict::Unknown) inconclusive_ = true;
      keep = false;
      break;
    }
    if (keep) counters_.push_back(std::move(c));
  }
  if (bounds_.base.negative ? bounds_.base.positive.empty() : bounds_.base.positive.size() == 1)
    for (const auto& c : counters_) orth_.push_back(c.front());
}

Verdict Behaviour::contains(const Design& d) const {
  if (!(d.base == bounds_.base)) return Verdict::No;
  bool unknown = false;
  for (const auto& c : counters_) {
    const Verdict v = net_verdict(d, c, bounds_.fuel);
    if (v == Verdict::No) return Verdict::No;
    if (v == Verdict::Unknown) unknown = true;
  }
  return unknown ? Verdict::Unknown : Verdict::Yes;
}

std::vector<Design> Behaviour::members() const {
  std::vector<Design> out;
  for (auto& d : enumerate_universe(bounds_))
    if (contains(d) == Verdict::Yes) out.push_back(std::move(d));
  return out;
}

Design incarnation_of(const Design& d, const Behaviour& b) {
  if (b.contains(d) != Verdict::Yes) throw NotAMember("design is not a member of the behaviour");
  Design acc = d.base.negative ? Design{d.base, negative_node(*d.base.negative, {})} : Design{d.base, fid_node()};
  for (const auto& c : b.counters()) {
    std::vector<Design> net{d};
    net.insert(net.end(), c.begin(), c.end());
    InteractionResult r = normalize_closed(make_cutnet(std::move(net)), b.bounds().fuel);
    acc = join(acc, used_part(d, r.trace));
  }
  return acc;
}

bool is_material(const Design& d, const Behaviour& b) { return incarnation_of(d, b) == d; }

std::string to_string(const CandidateVerdict& v) {
  using T = CandidateVerdict::Tag;
  switch (v.tag) {
    case T::Ground:
      return "Ground";
    case T::PseudoGround:
      return v.reason == CandidateVerdict::Reason::ContainsDaimon ? "PseudoGround(contains-daimon)"
                                                                   : "PseudoGround(not-material)";
    case T::NotInBehaviour:
      return "NotInBehaviour";
    case T::Unknown:
      return "Unknown";
  }
  return {};
}

CandidateVerdict classify_candidate(const Design& d, const Behaviour& b) {
  using T = CandidateVerdict::Tag;
  using R = CandidateVerdict::Reason;
  if (!ok(validate_design(d))) return {T::NotInBehaviour, R::None};
  switch (b.contains(d)) {
    case Verdict::No:
      return {T::NotInBehaviour, R::None};
    case Verdict::Unknown:
      return {T::Unknown, R::None};
    case Verdict::Yes:
      break;
  }
  if (contains_daimon(d)) return {T::PseudoGround, R::ContainsDaimon};
  if (!is_material(d, b)) return {T::PseudoGround, R::NotMaterial};
  return {T::Ground, R::None};
}

Behaviour behaviour_one(const Address& xi, const UniverseBounds& bounds) {
  return Behaviour({atomic_bomb(xi)}, bounds);
}

Behaviour behaviour_top(const Address& xi, const UniverseBounds& bounds) { return Behaviour({skunk(xi)}, bounds); }

Behaviour behaviour_zero(const Address& xi, const UniverseBounds& bounds) {
  return Behaviour({daimon(positive_base({xi}))}, bounds);
}

}  // namespace groundwork::ludics
