#include "groundwork/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace groundwork::background {

struct Formula::Node {
  Kind kind = Kind::Absurd;
  std::string name;  // predicate or bound variable
  std::vector<IndTerm> args;
  std::vector<Formula> subs;  // operands, or the quantifier body
  std::string key;
};

namespace {

using BoundStack = std::vector<std::string>;

void term_key(const IndTerm& t, const BoundStack& bound, std::string& out) {
  if (t.is_var()) {
    for (std::size_t i = bound.size(); i-- > 0;) {
      if (bound[i] == t.name) {
        out += "#" + std::to_string(bound.size() - 1 - i);
        return;
      }
    }
    out += "v:" + t.name;
  } else {
    out += "c:" + t.name;
  }
}

// De Bruijn style key so that alpha-equivalent formulas compare equal.
void formula_key(const Formula& f, BoundStack& bound, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
      out += "(A " + f.predicate();
      for (const auto& a : f.args()) {
        out += ' ';
        term_key(a, bound, out);
      }
      out += ')';
      return;
    case K::Absurd:
      out += "0";
      return;
    case K::Conj:
    case K::Disj:
    case K::Impl:
      out += f.is(K::Conj) ? "(& " : f.is(K::Disj) ? "(| " : "(> ";
      formula_key(f.left(), bound, out);
      out += ' ';
      formula_key(f.right(), bound, out);
      out += ')';
      return;
    case K::Forall:
    case K::Exists:
      out += f.is(K::Forall) ? "(! " : "(? ";
      bound.push_back(f.bound_var());
      formula_key(f.body(), bound, out);
      bound.pop_back();
      out += ')';
      return;
  }
}

}  // namespace

Formula::Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

Formula::Formula() : Formula(absurd()) {}

Formula Formula::make(std::shared_ptr<Node> n) {
  Formula f{std::shared_ptr<const Node>(n)};
  BoundStack bound;
  std::string key;
  formula_key(f, bound, key);
  n->key = std::move(key);
  return f;
}

Formula Formula::absurd() {
  static const Formula instance = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Absurd;
    n->key = "0";
    return Formula(std::shared_ptr<const Node>(n));
  }();
  return instance;
}

Formula Formula::atom(std::string predicate, std::vector<IndTerm> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->name = std::move(predicate);
  n->args = std::move(args);
  return make(n);
}

Formula Formula::conj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Conj;
  n->subs = {std::move(a), std::move(b)};
  return make(n);
}

Formula Formula::disj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Disj;
  n->subs = {std::move(a), std::move(b)};
  return make(n);
}

Formula Formula::impl(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Impl;
  n->subs = {std::move(a), std::move(b)};
  return make(n);
}

Formula Formula::forall(std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Forall;
  n->name = std::move(var);
  n->subs = {std::move(body)};
  return make(n);
}

Formula Formula::exists(std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exists;
  n->name = std::move(var);
  n->subs = {std::move(body)};
  return make(n);
}

Formula::Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::predicate() const {
  if (!is_atomic()) throw std::logic_error("predicate() on non-atomic formula");
  return node_->name;
}

const std::vector<IndTerm>& Formula::args() const { return node_->args; }

const Formula& Formula::left() const {
  if (node_->subs.size() != 2) throw std::logic_error("left() on non-binary formula");
  return node_->subs[0];
}

const Formula& Formula::right() const {
  if (node_->subs.size() != 2) throw std::logic_error("right() on non-binary formula");
  return node_->subs[1];
}

const std::string& Formula::bound_var() const {
  if (!is(Kind::Forall) && !is(Kind::Exists)) throw std::logic_error("bound_var() on non-quantifier");
  return node_->name;
}

const Formula& Formula::body() const {
  if (!is(Kind::Forall) && !is(Kind::Exists)) throw std::logic_error("body() on non-quantifier");
  return node_->subs[0];
}

const std::string& Formula::key() const { return node_->key; }

std::set<std::string> Formula::free_vars() const {
  std::set<std::string> out;
  switch (kind()) {
    case Kind::Atom:
      for (const auto& a : args())
        if (a.is_var()) out.insert(a.name);
      break;
    case Kind::Absurd:
      break;
    case Kind::Conj:
    case Kind::Disj:
    case Kind::Impl: {
      out = left().free_vars();
      auto r = right().free_vars();
      out.insert(r.begin(), r.end());
      break;
    }
    case Kind::Forall:
    case Kind::Exists:
      out = body().free_vars();
      out.erase(bound_var());
      break;
  }
  return out;
}

std::set<std::string> Formula::constants() const {
  std::set<std::string> out;
  if (is_atomic()) {
    for (const auto& a : args())
      if (!a.is_var()) out.insert(a.name);
  }
  for (const auto& s : node_->subs) {
    auto c = s.constants();
    out.insert(c.begin(), c.end());
  }
  return out;
}

std::map<std::string, std::size_t> Formula::predicates() const {
  std::map<std::string, std::size_t> out;
  if (is_atomic()) out.emplace(predicate(), args().size());
  for (const auto& s : node_->subs) {
    auto p = s.predicates();
    out.insert(p.begin(), p.end());
  }
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

Formula Formula::substitute(const IndSubst& s) const {
  if (s.empty()) return *this;
  switch (kind()) {
    case Kind::Atom: {
      std::vector<IndTerm> args2;
      args2.reserve(args().size());
      for (const auto& a : args()) {
        auto it = a.is_var() ? s.find(a.name) : s.end();
        args2.push_back(it == s.end() ? a : it->second);
      }
      return atom(predicate(), std::move(args2));
    }
    case Kind::Absurd:
      return *this;
    case Kind::Conj:
      return conj(left().substitute(s), right().substitute(s));
    case Kind::Disj:
      return disj(left().substitute(s), right().substitute(s));
    case Kind::Impl:
      return impl(left().substitute(s), right().substitute(s));
    case Kind::Forall:
    case Kind::Exists: {
      IndSubst inner = s;
      inner.erase(bound_var());
      if (inner.empty()) return *this;
      // Rename the binder when a substituted term would be captured.
      std::set<std::string> incoming;
      const auto body_free = body().free_vars();
      for (const auto& [v, t] : inner)
        if (body_free.count(v) && t.is_var()) incoming.insert(t.name);
      std::string x = bound_var();
      Formula b = body();
      if (incoming.count(x)) {
        std::set<std::string> avoid = incoming;
        avoid.insert(body_free.begin(), body_free.end());
        for (const auto& [v, t] : inner) avoid.insert(v);
        std::string y = fresh_name(x, avoid);
        b = b.substitute(x, IndTerm::var(y));
        x = y;
      }
      b = b.substitute(inner);
      return is(Kind::Forall) ? forall(x, b) : exists(x, b);
    }
  }
  return *this;
}

Formula Formula::rename_bound_apart(const std::set<std::string>& avoid) const {
  switch (kind()) {
    case Kind::Atom:
    case Kind::Absurd:
      return *this;
    case Kind::Conj:
      return conj(left().rename_bound_apart(avoid), right().rename_bound_apart(avoid));
    case Kind::Disj:
      return disj(left().rename_bound_apart(avoid), right().rename_bound_apart(avoid));
    case Kind::Impl:
      return impl(left().rename_bound_apart(avoid), right().rename_bound_apart(avoid));
    case Kind::Forall:
    case Kind::Exists: {
      std::string x = bound_var();
      Formula b = body();
      if (avoid.count(x)) {
        std::set<std::string> all = avoid;
        auto fv = b.free_vars();
        all.insert(fv.begin(), fv.end());
        std::string y = fresh_name(x, all);
        b = b.substitute(x, IndTerm::var(y));
        x = y;
      }
      b = b.rename_bound_apart(avoid);
      return is(Kind::Forall) ? forall(x, b) : exists(x, b);
    }
  }
  return *this;
}

std::string Formula::to_sexpr() const {
  switch (kind()) {
    case Kind::Atom: {
      std::string out = "(atom " + predicate();
      for (const auto& a : args()) out += " " + a.name;
      return out + ")";
    }
    case Kind::Absurd:
      return "(absurd)";
    case Kind::Conj:
      return "(and " + left().to_sexpr() + " " + right().to_sexpr() + ")";
    case Kind::Disj:
      return "(or " + left().to_sexpr() + " " + right().to_sexpr() + ")";
    case Kind::Impl:
      return "(impl " + left().to_sexpr() + " " + right().to_sexpr() + ")";
    case Kind::Forall:
      return "(forall " + bound_var() + " " + body().to_sexpr() + ")";
    case Kind::Exists:
      return "(exists " + bound_var() + " " + body().to_sexpr() + ")";
  }
  return {};
}

namespace {

int precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Impl:
      return 1;
    case Formula::Kind::Disj:
      return 2;
    case Formula::Kind::Conj:
      return 3;
    default:
      return 4;
  }
}

std::string pretty_at(const Formula& f, int min_prec) {
  std::string s;
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
      s = f.predicate();
      if (!f.args().empty()) {
        s += "(";
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) s += ",";
          s += f.args()[i].name;
        }
        s += ")";
      }
      return s;
    case K::Absurd:
      return "0";
    case K::Conj:
      s = pretty_at(f.left(), 4) + " ∧ " + pretty_at(f.right(), 4);
      break;
    case K::Disj:
      s = pretty_at(f.left(), 3) + " ∨ " + pretty_at(f.right(), 3);
      break;
    case K::Impl:
      s = pretty_at(f.left(), 2) + " → " + pretty_at(f.right(), 1);
      break;
    case K::Forall:
      return "∀" + f.bound_var() + "." + pretty_at(f.body(), 4);
    case K::Exists:
      return "∃" + f.bound_var() + "." + pretty_at(f.body(), 4);
  }
  if (precedence(f) < min_prec) return "(" + s + ")";
  return s;
}

}  // namespace

std::string Formula::pretty() const { return pretty_at(*this, 0); }

Formula parse_formula(const SExpr& e, const FormulaSyntax& syntax) {
  auto ind = [&](const SExpr& a) {
    const std::string& n = a.text();
    return syntax.constants.count(n) ? IndTerm::constant(n) : IndTerm::var(n);
  };
  if (e.is_atom()) {
    const std::string& t = e.text();
    if (t == "0" || t == "absurd") return Formula::absurd();
    return Formula::atom(t);
  }
  const std::string h = e.head();
  const auto& xs = e.items();
  auto arity = [&](std::size_t n) {
    if (xs.size() != n + 1)
      e.fail("'" + h + "' expects " + std::to_string(n) + " argument(s), got " +
             std::to_string(xs.size() - 1));
  };
  if (h == "atom") {
    if (xs.size() < 2) e.fail("'atom' needs a predicate name");
    std::vector<IndTerm> args;
    for (std::size_t i = 2; i < xs.size(); ++i) args.push_back(ind(xs[i]));
    return Formula::atom(xs[1].text(), std::move(args));
  }
  if (h == "absurd") {
    arity(0);
    return Formula::absurd();
  }
  if (h == "and" || h == "or" || h == "impl") {
    arity(2);
    Formula a = parse_formula(xs[1], syntax);
    Formula b = parse_formula(xs[2], syntax);
    if (h == "and") return Formula::conj(a, b);
    if (h == "or") return Formula::disj(a, b);
    return Formula::impl(a, b);
  }
  if (h == "not") {
    arity(1);
    return Formula::negation(parse_formula(xs[1], syntax));
  }
  if (h == "forall" || h == "exists") {
    arity(2);
    const std::string& v = xs[1].text();
    if (syntax.constants.count(v)) xs[1].fail("cannot bind individual constant '" + v + "'");
    Formula b = parse_formula(xs[2], syntax);
    return h == "forall" ? Formula::forall(v, b) : Formula::exists(v, b);
  }
  e.fail("unknown formula form '" + (h.empty() ? e.to_string() : h) + "'");
}

Formula parse_formula(const std::string& text, const FormulaSyntax& syntax) {
  return parse_formula(parse_sexpr(text), syntax);
}

bool match_formula(const Formula& pattern, const Formula& target, IndSubst& subst) {
  if (pattern.kind() != target.kind()) return false;
  switch (pattern.kind()) {
    case Formula::Kind::Atom: {
      if (pattern.predicate() != target.predicate()) return false;
      if (pattern.args().size() != target.args().size()) return false;
      for (std::size_t i = 0; i < pattern.args().size(); ++i) {
        const IndTerm& p = pattern.args()[i];
        const IndTerm& t = target.args()[i];
        if (!p.is_var()) {
          if (p != t) return false;
          continue;
        }
        auto [it, inserted] = subst.emplace(p.name, t);
        if (!inserted && it->second != t) return false;
      }
      return true;
    }
    case Formula::Kind::Absurd:
      return true;
    case Formula::Kind::Conj:
    case Formula::Kind::Disj:
    case Formula::Kind::Impl:
      return match_formula(pattern.left(), target.left(), subst) &&
             match_formula(pattern.right(), target.right(), subst);
    default:
      throw std::invalid_argument("match_formula: quantified patterns are not supported");
  }
}

}  // namespace groundwork::background
