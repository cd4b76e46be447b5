#include "groundwork/interaction.hpp"

#include <algorithm>
#include <numeric>

namespace groundwork::ludics {

using K = Node::Kind;

// ---------------------------------------------------------------------------
// Cut-nets

NetError::NetError(Report r) : std::runtime_error([&] {
  std::string s = "invalid cut-net";
  if (!r.empty()) s += ": " + r.front().message;
  return s;
}()), report(std::move(r)) {}

std::optional<CutNet> make_cutnet(std::vector<Design> designs, Report& report) {
  const std::size_t before = report.size();
  if (designs.empty()) {
    report.push_back({"empty", "a cut-net needs at least one design", ""});
    return std::nullopt;
  }
  for (std::size_t k = 0; k < designs.size(); ++k) {
    for (const auto& v : validate_design(designs[k]))
      report.push_back({"invalid-design", v.message, "design " + std::to_string(k) + ": " + v.path});
  }

  // address -> (design index, negative?)
  std::map<Address, std::vector<std::pair<std::size_t, bool>>> occurrences;
  for (std::size_t k = 0; k < designs.size(); ++k) {
    const Pitchfork& b = designs[k].base;
    if (b.negative) occurrences[*b.negative].push_back({k, true});
    for (const auto& a : b.positive) occurrences[a].push_back({k, false});
  }
  for (auto i = occurrences.begin(); i != occurrences.end(); ++i)
    for (auto j = std::next(i); j != occurrences.end(); ++j)
      if (!disjoint(i->first, j->first))
        report.push_back({"not-disjoint",
                          "base addresses " + to_string(i->first) + " and " + to_string(j->first) +
                              " are neither disjoint nor equal",
                          ""});

  CutNet net;
  std::vector<std::size_t> parent(designs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, occ] : occurrences) {
    if (occ.size() > 2) {
      report.push_back({"address-multiplicity", to_string(a) + " occurs in " + std::to_string(occ.size()) + " bases",
                        ""});
      continue;
    }
    if (occ.size() == 1) {
      if (occ[0].second)
        net.base.negative = a;
      else
        net.base.positive.insert(a);
      continue;
    }
    if (occ[0].second == occ[1].second) {
      report.push_back(
          {"address-multiplicity", to_string(a) + " occurs twice with the same polarity", ""});
      continue;
    }
    net.cuts.insert(a);
    const std::size_t x = find(occ[0].first), y = find(occ[1].first);
    if (x == y)
      report.push_back({"cyclic", "the cut on " + to_string(a) + " closes a cycle", ""});
    else
      parent[x] = y;
  }
  for (std::size_t k = 1; k < designs.size(); ++k)
    if (find(k) != find(0)) {
      report.push_back({"disconnected", "design " + std::to_string(k) + " is not connected to design 0", ""});
      break;
    }
  if (report.size() != before) return std::nullopt;

  std::vector<std::size_t> principals;
  for (std::size_t k = 0; k < designs.size(); ++k) {
    const auto& neg = designs[k].base.negative;
    if (!neg || !net.cuts.count(*neg)) principals.push_back(k);
  }
  if (principals.size() != 1) {
    report.push_back({"principal", "expected one principal design, found " + std::to_string(principals.size()), ""});
    return std::nullopt;
  }
  net.principal = principals.front();
  net.designs = std::move(designs);
  return net;
}

CutNet make_cutnet(std::vector<Design> designs) {
  Report r;
  auto net = make_cutnet(std::move(designs), r);
  if (!net) throw NetError(std::move(r));
  return *std::move(net);
}

std::string to_string(const Action& a) {
  return std::string(a.positive ? "+ " : "- ") + to_string(a.focus) + " " + to_string(a.ramification);
}

std::string to_string(Divergence d) {
  return d == Divergence::FidEncountered ? "fid-encountered" : "no-matching-negative-action";
}

std::string to_string(InteractionResult::Tag t) {
  switch (t) {
    case InteractionResult::Tag::Converged:
      return "converged";
    case InteractionResult::Tag::Diverged:
      return "diverged";
    case InteractionResult::Tag::FuelExhausted:
      return "fuel-exhausted";
  }
  return {};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    case Verdict::Unknown:
      return "unknown";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

struct Pending {
  NodePtr node;
  std::set<Address> context;
};
using Env = std::map<Address, Pending>;

struct Stop {};

struct Run {
  std::size_t fuel;
  InteractionResult out;

  [[noreturn]] void diverge(const Address& at, Divergence why) {
    out.tag = InteractionResult::Tag::Diverged;
    out.at = at;
    out.reason = why;
    throw Stop{};
  }

  // Positive position `p` with positive context `delta`.
  NodePtr positive(NodePtr p, std::set<Address> delta, Env env) {
    for (;;) {
      switch (p->kind) {
        case K::Daimon:
          for (const auto& a : delta)
            if (std::find(out.visited.begin(), out.visited.end(), a) == out.visited.end()) out.visited.push_back(a);
          return p;
        case K::Fid:
          diverge(delta.empty() ? Address{} : *delta.begin(), Divergence::FidEncountered);
        case K::Negative:
          throw std::logic_error("negative rule at a positive position");
        case K::Positive:
          break;
      }
      std::set<Address> gamma = delta;
      gamma.erase(p->focus);
      auto parts = premise_contexts(*p, gamma);
      auto it = env.find(p->focus);
      if (it == env.end()) {
        // action on an uncut address: it belongs to the result
        std::vector<NodePtr> kids;
        for (std::size_t k = 0; k < p->children.size(); ++k)
          kids.push_back(negative(p->children[k], parts[k], env));
        return positive_node(p->focus, p->ramification, std::move(kids));
      }
      if (out.pairs() >= fuel) {
        out.tag = InteractionResult::Tag::FuelExhausted;
        throw Stop{};
      }
      Pending partner = std::move(it->second);
      env.erase(it);
      auto b = partner.node->branches.find(p->ramification);
      if (b == partner.node->branches.end()) diverge(p->focus, Divergence::NoMatchingNegativeAction);
      out.trace.push_back({true, p->focus, p->ramification});
      out.trace.push_back({false, p->focus, p->ramification});
      out.visited.push_back(p->focus);
      for (std::size_t k = 0; k < p->children.size(); ++k)
        env[p->children[k]->focus] = Pending{p->children[k], parts[k]};
      delta = partner.context;
      for (const auto& a : star(p->focus, p->ramification)) delta.insert(a);
      p = b->second;
    }
  }

  NodePtr negative(const NodePtr& n, const std::set<Address>& delta, const Env& env) {
    std::map<Ramification, NodePtr> branches;
    for (const auto& [I, b] : n->branches) {
      std::set<Address> ctx = delta;
      for (const auto& a : star(n->focus, I)) ctx.insert(a);
      // A branch of the result whose interaction diverges has no
      // continuation, so it is not part of the normal form.
      try {
        branches[I] = positive(b, ctx, env);
      } catch (const Stop&) {
        if (out.tag == InteractionResult::Tag::FuelExhausted) throw;
        out.tag = InteractionResult::Tag::Converged;
      }
    }
    return negative_node(n->focus, std::move(branches));
  }
};

}  // namespace

InteractionResult normalize(const CutNet& net, std::size_t fuel) {
  Run run{fuel, {}};
  Env env;
  for (std::size_t k = 0; k < net.designs.size(); ++k) {
    if (k == net.principal) continue;
    const Design& d = net.designs[k];
    env[*d.base.negative] = Pending{d.root, d.base.positive};
  }
  const Design& p = net.designs[net.principal];
  try {
    NodePtr body = p.base.negative ? run.negative(p.root, p.base.positive, env)
                                   : run.positive(p.root, p.base.positive, env);
    run.out.tag = InteractionResult::Tag::Converged;
    run.out.result = Design{net.base, body};
  } catch (const Stop&) {
  }
  return run.out;
}

InteractionResult normalize_closed(const CutNet& net, std::size_t fuel) {
  if (!net.closed()) throw std::invalid_argument("cut-net is not closed: base " + to_string(net.base));
  return normalize(net, fuel);
}

namespace {

bool dual_bases(const Design& pos, const Design& neg) {
  return pos.base.is_positive() && pos.base.positive.size() == 1 && neg.base.negative &&
         neg.base.positive.empty() && *pos.base.positive.begin() == *neg.base.negative;
}

}  // namespace

Verdict orthogonal(const Design& d, const Design& e, std::size_t fuel) {
  const Design* pos = &d;
  const Design* neg = &e;
  if (!dual_bases(*pos, *neg)) std::swap(pos, neg);
  if (!dual_bases(*pos, *neg))
    throw BaseMismatch("bases " + to_string(d.base) + " and " + to_string(e.base) + " are not dual");
  return closed_verdict({pos, neg}, fuel);
}

Verdict closed_verdict(const std::vector<const Design*>& net, std::size_t fuel) {
  // Only the verdict is needed: the pending negative nodes are all that
  // matters, and there are few of them.
  std::vector<std::pair<const Address*, const Node*>> env;
  const Node* p = nullptr;
  for (const Design* d : net) {
    if (d->base.negative)
      env.push_back({&d->root->focus, d->root.get()});
    else
      p = d->root.get();
  }
  if (!p) throw std::invalid_argument("closed net without a positive design");
  std::size_t pairs = 0;
  for (;;) {
    if (p->is(K::Daimon)) return Verdict::Yes;
    if (!p->is(K::Positive)) return Verdict::No;
    auto it = std::find_if(env.begin(), env.end(), [&](const auto& x) { return *x.first == p->focus; });
    if (it == env.end()) return Verdict::No;
    if (pairs++ >= fuel) return Verdict::Unknown;
    const Node* partner = it->second;
    env.erase(it);
    auto b = partner->branches.find(p->ramification);
    if (b == partner->branches.end()) return Verdict::No;
    for (const auto& c : p->children) env.push_back({&c->focus, c.get()});
    p = b->second.get();
  }
}

// ---------------------------------------------------------------------------
// Used part

namespace {

struct Pruner {
  std::map<Address, Ramification> consumed;

  NodePtr positive(const NodePtr& n) const {
    if (!n->is(K::Positive)) return n;
    auto it = consumed.find(n->focus);
    if (it != consumed.end() && it->second != n->ramification)
      throw TraceMismatch("trace consumes " + to_string(n->focus) + " with " + to_string(it->second) +
                          " but the design plays " + to_string(n->ramification));
    std::vector<NodePtr> kids;
    for (const auto& c : n->children) kids.push_back(negative(c));
    return positive_node(n->focus, n->ramification, std::move(kids));
  }

  NodePtr negative(const NodePtr& n) const {
    std::map<Ramification, NodePtr> branches;
    auto it = consumed.find(n->focus);
    if (it != consumed.end()) {
      auto b = n->branches.find(it->second);
      if (b == n->branches.end())
        throw TraceMismatch("trace consumes " + to_string(n->focus) + " with " + to_string(it->second) +
                            " which the design does not accept");
      branches[b->first] = positive(b->second);
    }
    return negative_node(n->focus, std::move(branches));
  }
};

}  // namespace

Design used_part(const Design& d, const std::vector<Action>& trace) {
  Pruner pr;
  for (const auto& a : trace) {
    auto [it, fresh] = pr.consumed.emplace(a.focus, a.ramification);
    if (!fresh && it->second != a.ramification)
      throw TraceMismatch("trace consumes " + to_string(a.focus) + " twice with different ramifications");
  }
  NodePtr root = d.root->is(K::Negative) ? pr.negative(d.root) : pr.positive(d.root);
  return Design{d.base, root};
}

// ---------------------------------------------------------------------------
// Stepping

Machine::Machine(const CutNet& net, std::size_t fuel) : fuel_(fuel) {
  if (!net.closed()) throw std::invalid_argument("cut-net is not closed: base " + to_string(net.base));
  State s;
  for (std::size_t k = 0; k < net.designs.size(); ++k) {
    const Design& d = net.designs[k];
    Entry e{d.root, d.base.positive, k};
    if (k == net.principal)
      s.principal = e;
    else
      s.env[*d.base.negative] = e;
  }
  settle(s);
  history_.push_back(std::move(s));
}

void Machine::settle(State& s) const {
  const NodePtr& p = s.principal.node;
  InteractionResult r;
  r.trace = s.trace;
  r.visited = s.visited;
  switch (p->kind) {
    case K::Daimon:
      r.tag = InteractionResult::Tag::Converged;
      for (const auto& a : s.principal.context)
        if (std::find(r.visited.begin(), r.visited.end(), a) == r.visited.end()) r.visited.push_back(a);
      r.result = Design{positive_base({}), p};
      s.outcome = r;
      return;
    case K::Fid:
      r.tag = InteractionResult::Tag::Diverged;
      r.reason = Divergence::FidEncountered;
      r.at = s.principal.context.empty() ? Address{} : *s.principal.context.begin();
      s.outcome = r;
      return;
    case K::Negative:
      throw std::logic_error("negative rule at a positive position");
    case K::Positive:
      break;
  }
  auto it = s.env.find(p->focus);
  if (it == s.env.end() || !it->second.node->branches.count(p->ramification)) {
    r.tag = InteractionResult::Tag::Diverged;
    r.reason = Divergence::NoMatchingNegativeAction;
    r.at = p->focus;
    s.outcome = r;
    return;
  }
  if (s.trace.size() / 2 >= fuel_) {
    r.tag = InteractionResult::Tag::FuelExhausted;
    s.outcome = r;
  }
}

bool Machine::done() const { return history_.back().outcome.has_value(); }

bool Machine::step() {
  if (done()) return false;
  State s = history_.back();
  const NodePtr p = s.principal.node;
  auto it = s.env.find(p->focus);
  Entry partner = it->second;
  s.env.erase(it);
  std::set<Address> gamma = s.principal.context;
  gamma.erase(p->focus);
  auto parts = premise_contexts(*p, gamma);
  for (std::size_t k = 0; k < p->children.size(); ++k)
    s.env[p->children[k]->focus] = Entry{p->children[k], parts[k], s.principal.owner};
  s.trace.push_back({true, p->focus, p->ramification});
  s.trace.push_back({false, p->focus, p->ramification});
  s.visited.push_back(p->focus);
  std::set<Address> delta = partner.context;
  for (const auto& a : star(p->focus, p->ramification)) delta.insert(a);
  s.principal = Entry{partner.node->branches.at(p->ramification), std::move(delta), partner.owner};
  settle(s);
  history_.push_back(std::move(s));
  return true;
}

bool Machine::back() {
  if (history_.size() <= 1) return false;
  history_.pop_back();
  return true;
}

InteractionResult Machine::result() const {
  if (!done()) throw std::logic_error("normalization has not finished");
  return *history_.back().outcome;
}

std::vector<Design> Machine::current() const {
  const State& s = history_.back();
  struct Item {
    std::size_t owner;
    bool principal;
    Design d;
  };
  std::vector<Item> items{{s.principal.owner, true, Design{positive_base(s.principal.context), s.principal.node}}};
  for (const auto& [a, e] : s.env) items.push_back({e.owner, false, Design{negative_base(a, e.context), e.node}});
  std::stable_sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
    if (x.owner != y.owner) return x.owner < y.owner;
    return x.principal && !y.principal;
  });
  std::vector<Design> out;
  for (auto& i : items) out.push_back(std::move(i.d));
  return out;
}

std::vector<std::string> render_snapshots(const CutNet& net, const RenderOptions& opt, std::size_t fuel) {
  Machine m(net, fuel);
  std::vector<std::vector<Design>> states{m.current()};
  while (m.step()) states.push_back(m.current());
  const InteractionResult r = m.result();

  RenderOptions o = opt;
  o.highlight.insert(r.visited.begin(), r.visited.end());
  auto block = [&](const std::vector<Design>& ds) {
    std::string s;
    for (std::size_t k = 0; k < ds.size(); ++k) {
      if (k) s += "\n";
      s += render_design(ds[k], o);
    }
    return s;
  };
  std::vector<std::string> out;
  for (const auto& ds : states) out.push_back(block(ds));
  if (r.converged()) out.push_back(block({*r.result}));
  return out;
}

std::string render_interaction(const CutNet& net, const RenderOptions& opt, std::size_t fuel) {
  std::string text;
  auto blocks = render_snapshots(net, opt, fuel);
  for (std::size_t k = 0; k < blocks.size(); ++k) text += "-- step " + std::to_string(k) + "\n" + blocks[k];
  return text;
}

}  // namespace groundwork::ludics
