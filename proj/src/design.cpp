#include "groundwork/design.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace groundwork::ludics {

using K = Node::Kind;

// ---------------------------------------------------------------------------
// Addresses and pitchforks

Address child(const Address& xi, std::uint32_t i) {
  Address a = xi;
  a.push_back(i);
  return a;
}

bool is_prefix(const Address& prefix, const Address& a) {
  return prefix.size() <= a.size() && std::equal(prefix.begin(), prefix.end(), a.begin());
}

bool disjoint(const Address& a, const Address& b) { return !is_prefix(a, b) && !is_prefix(b, a); }

std::string to_string(const Address& a) {
  if (a.empty()) return "ε";
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(a[i]);
  }
  return s;
}

Address parse_address(const std::string& text) {
  if (text == "ε" || text == "eps") return {};
  Address a;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t dot = text.find('.', start);
    const std::string part = text.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw std::invalid_argument("bad address '" + text + "'");
    a.push_back(static_cast<std::uint32_t>(std::stoul(part)));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return a;
}

std::set<Address> star(const Address& xi, const Ramification& I) {
  std::set<Address> out;
  for (auto i : I) out.insert(child(xi, i));
  return out;
}

std::string to_string(const Ramification& I) {
  if (I.empty()) return "∅";
  std::string s = "{";
  bool first = true;
  for (auto i : I) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

std::vector<Ramification> powerset_pool(std::uint32_t n) {
  std::vector<Ramification> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Ramification I;
    for (std::uint32_t i = 0; i < n; ++i)
      if (mask & (1u << i)) I.insert(i);
    out.push_back(I);
  }
  std::stable_sort(out.begin(), out.end(), [](const Ramification& a, const Ramification& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::set<Address> Pitchfork::addresses() const {
  std::set<Address> out = positive;
  if (negative) out.insert(*negative);
  return out;
}

Pitchfork positive_base(std::set<Address> delta) { return Pitchfork{std::nullopt, std::move(delta)}; }

Pitchfork negative_base(Address xi, std::set<Address> delta) { return Pitchfork{std::move(xi), std::move(delta)}; }

Pitchfork dual(const Pitchfork& p) {
  if (p.negative && p.positive.empty()) return positive_base({*p.negative});
  if (!p.negative && p.positive.size() == 1) return negative_base(*p.positive.begin());
  throw std::invalid_argument("dual: base " + to_string(p) + " has more than one address");
}

Report validate_pitchfork(const Pitchfork& p) {
  Report r;
  std::vector<Address> all;
  if (p.negative) all.push_back(*p.negative);
  for (const auto& a : p.positive) {
    if (p.negative && a == *p.negative)
      r.push_back({"base-overlap", to_string(a) + " is both negative and positive", "base"});
    all.push_back(a);
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (all[i] != all[j] && !disjoint(all[i], all[j]))
        r.push_back({"base-not-disjoint", to_string(all[i]) + " and " + to_string(all[j]), "base"});
  return r;
}

std::string to_string(const Pitchfork& p) {
  RenderOptions plain;
  return render_pitchfork(p, plain);
}

// ---------------------------------------------------------------------------
// Nodes

const NodePtr* Node::child_at(std::uint32_t i) const {
  std::size_t k = 0;
  for (auto j : ramification) {
    if (j == i) return k < children.size() ? &children[k] : nullptr;
    ++k;
  }
  return nullptr;
}

NodePtr daimon_node() {
  static const NodePtr d = [] {
    auto n = std::make_shared<Node>();
    n->kind = K::Daimon;
    return NodePtr(n);
  }();
  return d;
}

NodePtr fid_node() {
  static const NodePtr f = [] {
    auto n = std::make_shared<Node>();
    n->kind = K::Fid;
    return NodePtr(n);
  }();
  return f;
}

NodePtr positive_node(Address focus, Ramification I, std::vector<NodePtr> children) {
  auto n = std::make_shared<Node>();
  n->kind = K::Positive;
  n->focus = std::move(focus);
  n->ramification = std::move(I);
  n->children = std::move(children);
  return n;
}

NodePtr negative_node(Address focus, std::map<Ramification, NodePtr> branches) {
  auto n = std::make_shared<Node>();
  n->kind = K::Negative;
  n->focus = std::move(focus);
  n->branches = std::move(branches);
  return n;
}

int compare(const NodePtr& a, const NodePtr& b) {
  if (a == b) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->focus != b->focus) return a->focus < b->focus ? -1 : 1;
  if (a->kind == K::Positive) {
    if (a->ramification != b->ramification) return a->ramification < b->ramification ? -1 : 1;
    if (a->children.size() != b->children.size()) return a->children.size() < b->children.size() ? -1 : 1;
    for (std::size_t i = 0; i < a->children.size(); ++i)
      if (int c = compare(a->children[i], b->children[i])) return c;
  } else if (a->kind == K::Negative) {
    auto ia = a->branches.begin();
    auto ib = b->branches.begin();
    for (; ia != a->branches.end() && ib != b->branches.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
      if (int c = compare(ia->second, ib->second)) return c;
    }
    if (ia != a->branches.end()) return 1;
    if (ib != b->branches.end()) return -1;
  }
  return 0;
}

bool equal(const NodePtr& a, const NodePtr& b) { return compare(a, b) == 0; }

// ---------------------------------------------------------------------------
// Validation

namespace {

void positive_foci(const NodePtr& n, std::set<Address>& out) {
  if (n->is(K::Positive)) out.insert(n->focus);
  for (const auto& c : n->children) positive_foci(c, out);
  for (const auto& [I, b] : n->branches) positive_foci(b, out);
}

// Splits the context of a positive rule among its premises: each premise
// receives the context addresses it focuses on.
std::vector<std::set<Address>> split_context(const Node& n, const std::set<Address>& gamma,
                                             std::vector<Address>* shared = nullptr) {
  std::vector<std::set<Address>> parts;
  std::map<Address, std::size_t> owner;
  for (std::size_t k = 0; k < n.children.size(); ++k) {
    std::set<Address> used;
    positive_foci(n.children[k], used);
    std::set<Address> part;
    for (const auto& a : gamma) {
      if (!used.count(a)) continue;
      part.insert(a);
      auto [it, fresh] = owner.emplace(a, k);
      if (!fresh && shared) shared->push_back(a);
    }
    parts.push_back(std::move(part));
  }
  return parts;
}

}  // namespace

std::vector<std::set<Address>> premise_contexts(const Node& n, const std::set<Address>& gamma) {
  return split_context(n, gamma);
}

namespace {

struct Walker {
  Report* report = nullptr;
  std::function<void(const NodePtr&, const Pitchfork&, const std::string&, int)> visit;

  void fail(const std::string& code, const std::string& msg, const std::string& path) {
    if (report) report->push_back({code, msg, path});
  }

  void positive(const NodePtr& n, const std::set<Address>& delta, const std::string& path, int level) {
    if (visit) visit(n, positive_base(delta), path, level);
    switch (n->kind) {
      case K::Daimon:
      case K::Fid:
        return;
      case K::Negative:
        fail("polarity", "negative rule on positive pitchfork " + to_string(positive_base(delta)), path);
        return;
      case K::Positive:
        break;
    }
    if (!delta.count(n->focus)) {
      fail("focus-not-in-base", "focus " + to_string(n->focus) + " is not in " + to_string(positive_base(delta)),
           path);
      return;
    }
    if (n->children.size() != n->ramification.size()) {
      fail("arity", "ramification " + to_string(n->ramification) + " but " + std::to_string(n->children.size()) +
                        " premise(s)",
           path);
      return;
    }
    std::set<Address> gamma = delta;
    gamma.erase(n->focus);
    std::vector<Address> shared;
    auto parts = split_context(*n, gamma, &shared);
    for (const auto& a : shared)
      fail("context-shared", to_string(a) + " is used by two premises", path);
    std::size_t k = 0;
    for (auto i : n->ramification) {
      const NodePtr& c = n->children[k];
      const Address want = child(n->focus, i);
      const std::string cpath = path + "/" + to_string(want);
      if (!c->is(K::Negative)) {
        fail("polarity", "premise " + to_string(want) + " of a positive rule must be a negative rule", cpath);
      } else if (c->focus != want) {
        fail("sub-address", "premise focus " + to_string(c->focus) + " is not " + to_string(want), cpath);
      } else {
        negative(c, parts[k], cpath, level + 1);
      }
      ++k;
    }
  }

  void negative(const NodePtr& n, const std::set<Address>& delta, const std::string& path, int level) {
    if (visit) visit(n, negative_base(n->focus, delta), path, level);
    for (const auto& [I, b] : n->branches) {
      std::set<Address> ctx = delta;
      for (const auto& a : star(n->focus, I)) ctx.insert(a);
      positive(b, ctx, path + "/" + to_string(I), level + 1);
    }
  }

  void design(const Design& d) {
    if (report) {
      Report r = validate_pitchfork(d.base);
      report->insert(report->end(), r.begin(), r.end());
    }
    if (!d.root) {
      fail("empty", "design has no body", "root");
      return;
    }
    if (d.base.negative) {
      if (!d.root->is(K::Negative)) {
        fail("polarity", "base " + to_string(d.base) + " needs a negative rule at the root", "root");
        return;
      }
      if (d.root->focus != *d.base.negative) {
        fail("focus-not-in-base", "root focus " + to_string(d.root->focus) + " is not " +
                                      to_string(*d.base.negative),
             "root");
        return;
      }
      negative(d.root, d.base.positive, "root", 0);
    } else {
      positive(d.root, d.base.positive, "root", 0);
    }
  }
};

}  // namespace

Report validate_design(const Design& d) {
  Report r;
  Walker w{&r, {}};
  w.design(d);
  return r;
}

std::map<std::string, Pitchfork> node_bases(const Design& d) {
  std::map<std::string, Pitchfork> out;
  Walker w{nullptr, [&](const NodePtr&, const Pitchfork& p, const std::string& path, int) { out[path] = p; }};
  w.design(d);
  out["root"] = d.base;
  return out;
}

namespace {

bool any_node(const NodePtr& n, K kind) {
  if (n->is(kind)) return true;
  for (const auto& c : n->children)
    if (any_node(c, kind)) return true;
  for (const auto& [I, b] : n->branches)
    if (any_node(b, kind)) return true;
  return false;
}

std::size_t node_depth(const NodePtr& n) {
  std::size_t m = 0;
  for (const auto& c : n->children) m = std::max(m, node_depth(c));
  for (const auto& [I, b] : n->branches) m = std::max(m, node_depth(b));
  return m + 1;
}

std::size_t count(const NodePtr& n) {
  std::size_t m = 1;
  for (const auto& c : n->children) m += count(c);
  for (const auto& [I, b] : n->branches) m += count(b);
  return m;
}

}  // namespace

bool contains_daimon(const Design& d) { return any_node(d.root, K::Daimon); }
bool contains_fid(const Design& d) { return any_node(d.root, K::Fid); }
std::size_t depth(const Design& d) { return node_depth(d.root); }
std::size_t node_count(const Design& d) { return count(d.root); }

// ---------------------------------------------------------------------------
// Named designs

Design daimon(Pitchfork base) {
  if (base.negative) throw std::invalid_argument("the daimon needs a positive base");
  return Design{std::move(base), daimon_node()};
}

Design fid(Pitchfork base) {
  if (base.negative) throw std::invalid_argument("Fid needs a positive base");
  return Design{std::move(base), fid_node()};
}

Design atomic_bomb(const Address& xi) { return Design{positive_base({xi}), positive_node(xi, {}, {})}; }

Design skunk(const Address& xi) { return Design{negative_base(xi), negative_node(xi, {})}; }

Design negative_sponge(const Address& xi, const std::vector<Ramification>& N) {
  std::map<Ramification, NodePtr> branches;
  for (const auto& I : N) branches[I] = daimon_node();
  return Design{negative_base(xi), negative_node(xi, std::move(branches))};
}

namespace {

NodePtr fax_node(const Address& x, const Address& y, std::size_t depth, const std::vector<Ramification>& pool) {
  std::map<Ramification, NodePtr> branches;
  for (const auto& I : pool) {
    if (depth == 0) {
      branches[I] = fid_node();
      continue;
    }
    std::vector<NodePtr> kids;
    for (auto i : I) kids.push_back(fax_node(child(y, i), child(x, i), depth - 1, pool));
    branches[I] = positive_node(y, I, std::move(kids));
  }
  return negative_node(x, std::move(branches));
}

}  // namespace

Design build_fax(const Address& xi, const Address& xi_prime, std::size_t depth,
                 const std::vector<Ramification>& pool) {
  if (!disjoint(xi, xi_prime)) throw std::invalid_argument("Fax: addresses must be disjoint");
  if (depth == 0) throw std::invalid_argument("Fax: depth must be at least 1");
  return Design{negative_base(xi, {xi_prime}), fax_node(xi, xi_prime, depth, pool)};
}

Design build_fax(const Address& xi, const Address& xi_prime, std::size_t depth, std::uint32_t arity_bound) {
  return build_fax(xi, xi_prime, depth, powerset_pool(arity_bound + 1));
}

// ---------------------------------------------------------------------------
// Order and join

namespace {

bool node_le(const NodePtr& a, const NodePtr& b) {
  switch (a->kind) {
    case K::Fid:
      return b->positive_position();
    case K::Daimon:
      return b->is(K::Daimon);
    case K::Positive:
      if (!b->is(K::Positive) || a->focus != b->focus || a->ramification != b->ramification ||
          a->children.size() != b->children.size())
        return false;
      for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!node_le(a->children[i], b->children[i])) return false;
      return true;
    case K::Negative:
      if (!b->is(K::Negative) || a->focus != b->focus) return false;
      for (const auto& [I, sub] : a->branches) {
        auto it = b->branches.find(I);
        if (it == b->branches.end() || !node_le(sub, it->second)) return false;
      }
      return true;
  }
  return false;
}

NodePtr node_join(const NodePtr& a, const NodePtr& b) {
  if (a->is(K::Fid) && b->positive_position()) return b;
  if (b->is(K::Fid) && a->positive_position()) return a;
  if (a->kind != b->kind || a->focus != b->focus) throw std::invalid_argument("join: designs disagree on an action");
  switch (a->kind) {
    case K::Daimon:
      return a;
    case K::Positive: {
      if (a->ramification != b->ramification) throw std::invalid_argument("join: different ramifications");
      std::vector<NodePtr> kids;
      for (std::size_t i = 0; i < a->children.size(); ++i) kids.push_back(node_join(a->children[i], b->children[i]));
      return positive_node(a->focus, a->ramification, std::move(kids));
    }
    case K::Negative: {
      std::map<Ramification, NodePtr> br = a->branches;
      for (const auto& [I, sub] : b->branches) {
        auto it = br.find(I);
        if (it == br.end())
          br[I] = sub;
        else
          it->second = node_join(it->second, sub);
      }
      return negative_node(a->focus, std::move(br));
    }
    case K::Fid:
      break;
  }
  return a;
}

Address move_prefix(const Address& a, const Address& from, const Address& to) {
  if (!is_prefix(from, a)) return a;
  Address out = to;
  out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(from.size()), a.end());
  return out;
}

NodePtr relocate_node(const NodePtr& n, const Address& from, const Address& to) {
  switch (n->kind) {
    case K::Daimon:
    case K::Fid:
      return n;
    case K::Positive: {
      std::vector<NodePtr> kids;
      for (const auto& c : n->children) kids.push_back(relocate_node(c, from, to));
      return positive_node(move_prefix(n->focus, from, to), n->ramification, std::move(kids));
    }
    case K::Negative: {
      std::map<Ramification, NodePtr> br;
      for (const auto& [I, b] : n->branches) br[I] = relocate_node(b, from, to);
      return negative_node(move_prefix(n->focus, from, to), std::move(br));
    }
  }
  return n;
}

}  // namespace

bool subdesign_order(const Design& d1, const Design& d2) { return d1.base == d2.base && node_le(d1.root, d2.root); }

Design join(const Design& d1, const Design& d2) {
  if (!(d1.base == d2.base)) throw std::invalid_argument("join: different bases");
  return Design{d1.base, node_join(d1.root, d2.root)};
}

Design relocate(const Design& d, const Address& from, const Address& to) {
  Pitchfork base;
  if (d.base.negative) base.negative = move_prefix(*d.base.negative, from, to);
  for (const auto& a : d.base.positive) base.positive.insert(move_prefix(a, from, to));
  return Design{std::move(base), relocate_node(d.root, from, to)};
}

// ---------------------------------------------------------------------------
// Text format

namespace {

Address address_of(const SExpr& e) {
  try {
    return parse_address(e.text());
  } catch (const std::invalid_argument& ex) {
    e.fail(ex.what());
  }
}

Ramification ramification_of(const SExpr& e) {
  if (!e.is_list()) e.fail("expected a ramification (i ...)");
  Ramification I;
  for (const auto& x : e.items()) {
    const std::string& t = x.text();
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
      x.fail("ramification elements are natural numbers");
    if (!I.insert(static_cast<std::uint32_t>(std::stoul(t))).second) x.fail("repeated element in ramification");
  }
  return I;
}

std::string ram_text(const Ramification& I) {
  std::string s = "(";
  bool first = true;
  for (auto i : I) {
    if (!first) s += " ";
    s += std::to_string(i);
    first = false;
  }
  return s + ")";
}

}  // namespace

NodePtr parse_node(const SExpr& e) {
  if (e.is_form("daimon")) return daimon_node();
  if (e.is_form("fid")) return fid_node();
  if (e.is_form("pos")) {
    if (e.size() < 3) e.fail("(pos ADDR (I...) CHILD...)");
    Address focus = address_of(e[1]);
    Ramification I = ramification_of(e[2]);
    std::vector<NodePtr> kids;
    for (std::size_t i = 3; i < e.size(); ++i) kids.push_back(parse_node(e[i]));
    if (kids.size() != I.size()) e.fail("positive rule needs one premise per element of its ramification");
    return positive_node(std::move(focus), std::move(I), std::move(kids));
  }
  if (e.is_form("neg")) {
    if (e.size() < 2) e.fail("(neg ADDR ((I...) BODY)...)");
    Address focus = address_of(e[1]);
    std::map<Ramification, NodePtr> br;
    for (std::size_t i = 2; i < e.size(); ++i) {
      const SExpr& b = e[i];
      if (!b.is_list() || b.size() != 2) b.fail("negative branch is ((I...) BODY)");
      Ramification I = ramification_of(b[0]);
      if (br.count(I)) b.fail("duplicate ramification in negative rule");
      br.emplace(std::move(I), parse_node(b[1]));
    }
    return negative_node(std::move(focus), std::move(br));
  }
  e.fail("expected (daimon), (fid), (pos ...) or (neg ...)");
}

Design parse_design(const SExpr& e) {
  if (!e.is_form("design") || e.size() != 3) e.fail("expected (design (base ...) BODY)");
  const SExpr& b = e[1];
  if (!b.is_form("base")) b.fail("expected (base (neg A) (pos B...))");
  Pitchfork base;
  for (std::size_t i = 1; i < b.size(); ++i) {
    const SExpr& part = b[i];
    if (part.is_form("neg")) {
      if (part.size() != 2 || base.negative) part.fail("a base has at most one negative address");
      base.negative = address_of(part[1]);
    } else if (part.is_form("pos")) {
      for (std::size_t j = 1; j < part.size(); ++j) base.positive.insert(address_of(part[j]));
    } else {
      part.fail("expected (neg A) or (pos B...)");
    }
  }
  return Design{std::move(base), parse_node(e[2])};
}

Design parse_design(const std::string& text) { return parse_design(parse_sexpr(text)); }

std::string print_node(const NodePtr& n, int indent) {
  const bool flat = indent < 0;
  auto nl = [&](int extra) { return flat ? std::string(" ") : "\n" + std::string(indent + extra, ' '); };
  switch (n->kind) {
    case K::Daimon:
      return "(daimon)";
    case K::Fid:
      return "(fid)";
    case K::Positive: {
      std::string s = "(pos " + to_string(n->focus) + " " + ram_text(n->ramification);
      for (const auto& c : n->children) s += nl(2) + print_node(c, flat ? -1 : indent + 2);
      return s + ")";
    }
    case K::Negative: {
      std::string s = "(neg " + to_string(n->focus);
      for (const auto& [I, b] : n->branches)
        s += nl(2) + "(" + ram_text(I) + " " + print_node(b, flat ? -1 : indent + 2) + ")";
      return s + ")";
    }
  }
  return {};
}

std::string print_design(const Design& d, bool one_line) {
  std::string base = "(base";
  if (d.base.negative) base += " (neg " + to_string(*d.base.negative) + ")";
  if (!d.base.positive.empty()) {
    base += " (pos";
    for (const auto& a : d.base.positive) base += " " + to_string(a);
    base += ")";
  }
  base += ")";
  if (one_line) return "(design " + base + " " + print_node(d.root) + ")";
  return "(design " + base + "\n  " + print_node(d.root, 2) + ")";
}

// ---------------------------------------------------------------------------
// Rendering

std::string render_address(const Address& a, const RenderOptions& opt) {
  std::string s;
  if (opt.root_symbol) {
    s = *opt.root_symbol;
    const bool dots = std::any_of(a.begin(), a.end(), [](std::uint32_t i) { return i > 9; });
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (dots && i) s += '.';
      s += std::to_string(a[i]);
    }
  } else {
    s = to_string(a);
  }
  return opt.highlight.count(a) ? "*" + s + "*" : s;
}

std::string render_pitchfork(const Pitchfork& p, const RenderOptions& opt) {
  std::string s;
  if (p.negative) s = render_address(*p.negative, opt) + " ";
  s += "⊢";
  bool first = true;
  for (const auto& a : p.positive) {
    s += first ? " " : ", ";
    s += render_address(a, opt);
    first = false;
  }
  return s;
}

namespace {

std::string rule_label(const Node& n, const RenderOptions& opt) {
  switch (n.kind) {
    case K::Daimon:
      return "†";
    case K::Fid:
      return "Ω";
    case K::Positive:
      return "(" + render_address(n.focus, RenderOptions{opt.root_symbol, {}}) + ", " + to_string(n.ramification) +
             ")";
    case K::Negative: {
      std::string s = "(" + render_address(n.focus, RenderOptions{opt.root_symbol, {}}) + ", {";
      bool first = true;
      for (const auto& [I, b] : n.branches) {
        if (!first) s += ", ";
        s += to_string(I);
        first = false;
      }
      return s + "})";
    }
  }
  return {};
}

}  // namespace

std::string render_design(const Design& d, const RenderOptions& opt) {
  std::string out;
  Walker w{nullptr, [&](const NodePtr& n, const Pitchfork& p, const std::string&, int level) {
             // The root shows the declared base rather than the inferred one.
             const Pitchfork& shown = level == 0 ? d.base : p;
             out += std::string(2 * static_cast<std::size_t>(level), ' ') + render_pitchfork(shown, opt) + "  " +
                    rule_label(*n, opt) + "\n";
           }};
  w.design(d);
  return out;
}

}  // namespace groundwork::ludics
