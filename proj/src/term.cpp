#include "groundwork/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace groundwork::grounds {

struct Term::Node {
  Kind kind = Kind::Meta;
  TypedVar v1;
  TypedVar v2;
  std::string name;
  Formula annotation;
  int side = 0;
  IndTerm witness;
  std::vector<Term> args;
  std::string key;
  std::size_t size = 1;
};

std::string TypedVar::to_sexpr() const {
  if (index == 0) return "(var " + name + " " + type.to_sexpr() + ")";
  return "(var " + name + " " + std::to_string(index) + " " + type.to_sexpr() + ")";
}

std::string TypedVar::pretty() const {
  std::string s = name;
  if (index != 0) s += std::to_string(index);
  const std::string t = type.pretty();
  s += "^";
  s += (type.is_atomic() || type.is(Formula::Kind::Absurd)) ? t : "{" + t + "}";
  return s;
}

namespace {

std::string side_str(int side) { return std::to_string(side); }

std::string compute_key(const Term& t) {
  using K = Term::Kind;
  auto args = [&](std::size_t from = 0) {
    std::string s;
    for (std::size_t i = from; i < t.args().size(); ++i) s += " " + t.args()[i].key();
    return s;
  };
  switch (t.kind()) {
    case K::Var:
      return t.var().to_sexpr();
    case K::Const:
      return "(const " + t.name() + " " + t.annotation().to_sexpr() + ")";
    case K::ConjI:
      return "(and-i" + args() + ")";
    case K::DisjI:
      return "(or-i " + side_str(t.side()) + " " + t.annotation().to_sexpr() + args() + ")";
    case K::ImplI:
      return "(impl-i " + t.var().to_sexpr() + args() + ")";
    case K::ForallI:
      return "(forall-i " + t.name() + args() + ")";
    case K::ExistsI:
      return "(exists-i " + t.witness().name + " " + t.annotation().to_sexpr() + args() + ")";
    case K::Exploder:
      return "(explode " + t.annotation().to_sexpr() + args() + ")";
    case K::ConjE:
      return "(and-e " + side_str(t.side()) + args() + ")";
    case K::DisjE:
      return "(or-e " + t.var().to_sexpr() + " " + t.var2().to_sexpr() + args() + ")";
    case K::ImplE:
      return "(impl-e" + args() + ")";
    case K::ForallE:
      return "(forall-e " + t.witness().name + args() + ")";
    case K::ExistsE:
      return "(exists-e " + t.name() + " " + t.var().to_sexpr() + args() + ")";
    case K::DS:
      return "(ds" + args() + ")";
    case K::UserOp:
      return "(op " + t.name() + args() + ")";
    case K::Meta:
      return "(meta " + t.name() + ")";
  }
  return {};
}

}  // namespace

Term::Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

Term Term::make(std::shared_ptr<Node> n) {
  for (const auto& a : n->args) n->size += a.size();
  Term t{std::shared_ptr<const Node>(n)};
  n->key = compute_key(t);
  return t;
}

Term Term::var(TypedVar v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->v1 = std::move(v);
  return make(n);
}

Term Term::constant(std::string name, Formula type) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->name = std::move(name);
  n->annotation = std::move(type);
  return make(n);
}

Term Term::conj_i(Term t, Term u) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::ConjI;
  n->args = {std::move(t), std::move(u)};
  return make(n);
}

Term Term::disj_i(int side, Formula disjunction, Term t) {
  if (side != 1 && side != 2) throw std::invalid_argument("disjunction side must be 1 or 2");
  auto n = std::make_shared<Node>();
  n->kind = Kind::DisjI;
  n->side = side;
  n->annotation = std::move(disjunction);
  n->args = {std::move(t)};
  return make(n);
}

Term Term::impl_i(TypedVar bound, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::ImplI;
  n->v1 = std::move(bound);
  n->args = {std::move(body)};
  return make(n);
}

Term Term::forall_i(std::string var, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::ForallI;
  n->name = std::move(var);
  n->args = {std::move(body)};
  return make(n);
}

Term Term::exists_i(IndTerm witness, Formula existential, Term t) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::ExistsI;
  n->witness = std::move(witness);
  n->annotation = std::move(existential);
  n->args = {std::move(t)};
  return make(n);
}

Term Term::exploder(Formula target, Term t) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exploder;
  n->annotation = std::move(target);
  n->args = {std::move(t)};
  return make(n);
}

Term Term::conj_e(int side, Term t) {
  if (side != 1 && side != 2) throw std::invalid_argument("conjunction side must be 1 or 2");
  auto n = std::make_shared<Node>();
  n->kind = Kind::ConjE;
  n->side = side;
  n->args = {std::move(t)};
  return make(n);
}

Term Term::disj_e(TypedVar left, TypedVar right, Term t, Term u, Term v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::DisjE;
  n->v1 = std::move(left);
  n->v2 = std::move(right);
  n->args = {std::move(t), std::move(u), std::move(v)};
  return make(n);
}

Term Term::impl_e(Term fn, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::ImplE;
  n->args = {std::move(fn), std::move(arg)};
  return make(n);
}

Term Term::forall_e(IndTerm witness, Term t) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::ForallE;
  n->witness = std::move(witness);
  n->args = {std::move(t)};
  return make(n);
}

Term Term::exists_e(std::string var, TypedVar bound, Term t, Term u) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::ExistsE;
  n->name = std::move(var);
  n->v1 = std::move(bound);
  n->args = {std::move(t), std::move(u)};
  return make(n);
}

Term Term::ds(Term t, Term u) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::DS;
  n->args = {std::move(t), std::move(u)};
  return make(n);
}

Term Term::user_op(std::string name, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::UserOp;
  n->name = std::move(name);
  n->args = std::move(args);
  return make(n);
}

Term Term::meta(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Meta;
  n->name = std::move(name);
  return make(n);
}

Term::Kind Term::kind() const { return node_->kind; }

bool Term::is_primitive_head() const {
  switch (kind()) {
    case Kind::Var:
    case Kind::Const:
    case Kind::ConjI:
    case Kind::DisjI:
    case Kind::ImplI:
    case Kind::ForallI:
    case Kind::ExistsI:
    case Kind::Exploder:
      return true;
    default:
      return false;
  }
}

const TypedVar& Term::var() const { return node_->v1; }
const TypedVar& Term::var2() const { return node_->v2; }
const std::string& Term::name() const { return node_->name; }
const Formula& Term::annotation() const { return node_->annotation; }
int Term::side() const { return node_->side; }
const IndTerm& Term::witness() const { return node_->witness; }
const std::vector<Term>& Term::args() const { return node_->args; }
const std::string& Term::key() const { return node_->key; }
std::size_t Term::size() const { return node_->size; }

Term Term::with_args(std::vector<Term> args) const {
  if (args.size() != node_->args.size()) throw std::invalid_argument("with_args: arity mismatch");
  auto n = std::make_shared<Node>(*node_);
  n->args = std::move(args);
  n->size = 1;
  return make(n);
}

std::string Term::pretty() const {
  using K = Kind;
  auto arglist = [&](std::size_t from = 0) {
    std::string s;
    for (std::size_t i = from; i < args().size(); ++i) {
      if (i > from) s += ", ";
      s += args()[i].pretty();
    }
    return s;
  };
  switch (kind()) {
    case K::Var:
      return var().pretty();
    case K::Const:
      return name() + "^" + annotation().pretty();
    case K::ConjI:
      return "∧I(" + arglist() + ")";
    case K::DisjI: {
      const Formula& d = annotation();
      const Formula& part = d.is(Formula::Kind::Disj) ? (side() == 1 ? d.left() : d.right()) : d;
      return "∨I[" + part.pretty() + " ⊢ " + d.pretty() + "](" + arglist() + ")";
    }
    case K::ImplI:
      return "→I" + var().pretty() + "(" + arglist() + ")";
    case K::ForallI:
      return "∀I " + name() + ".(" + arglist() + ")";
    case K::ExistsI: {
      const Formula& e = annotation();
      std::string inst = e.is(Formula::Kind::Exists) ? e.body().substitute(e.bound_var(), witness()).pretty()
                                                    : "?";
      return "∃I[" + inst + " ⊢ " + e.pretty() + "](" + arglist() + ")";
    }
    case K::Exploder:
      return "0_{" + annotation().pretty() + "}(" + arglist() + ")";
    case K::ConjE:
      return "∧E" + std::to_string(side()) + "(" + arglist() + ")";
    case K::DisjE:
      return "∨E " + var().pretty() + " " + var2().pretty() + ".(" + arglist() + ")";
    case K::ImplE:
      return "→E(" + arglist() + ")";
    case K::ForallE:
      return "∀E[" + witness().name + "](" + arglist() + ")";
    case K::ExistsE:
      return "∃E " + name() + " " + var().pretty() + ".(" + arglist() + ")";
    case K::DS:
      return "DS(" + arglist() + ")";
    case K::UserOp:
      return name() + "(" + arglist() + ")";
    case K::Meta:
      return "?" + name();
  }
  return {};
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

void collect_typed(const Term& t, std::set<TypedVar>& bound, std::vector<TypedVar>& out,
                   std::set<TypedVar>& seen) {
  using K = Term::Kind;
  switch (t.kind()) {
    case K::Var:
      if (!bound.count(t.var()) && seen.insert(t.var()).second) out.push_back(t.var());
      return;
    case K::ImplI: {
      const bool fresh = bound.insert(t.var()).second;
      collect_typed(t.arg(0), bound, out, seen);
      if (fresh) bound.erase(t.var());
      return;
    }
    case K::DisjE: {
      collect_typed(t.arg(0), bound, out, seen);
      bool fresh = bound.insert(t.var()).second;
      collect_typed(t.arg(1), bound, out, seen);
      if (fresh) bound.erase(t.var());
      fresh = bound.insert(t.var2()).second;
      collect_typed(t.arg(2), bound, out, seen);
      if (fresh) bound.erase(t.var2());
      return;
    }
    case K::ExistsE: {
      collect_typed(t.arg(0), bound, out, seen);
      const bool fresh = bound.insert(t.var()).second;
      collect_typed(t.arg(1), bound, out, seen);
      if (fresh) bound.erase(t.var());
      return;
    }
    default:
      for (const auto& a : t.args()) collect_typed(a, bound, out, seen);
  }
}

void add_all(std::set<std::string>& out, const std::set<std::string>& in) { out.insert(in.begin(), in.end()); }

std::set<std::string> ind_vars(const Term& t) {
  using K = Term::Kind;
  std::set<std::string> out;
  switch (t.kind()) {
    case K::Var:
      return t.var().type.free_vars();
    case K::Const:
    case K::DisjI:
    case K::Exploder:
      out = t.annotation().free_vars();
      break;
    case K::ExistsI:
      out = t.annotation().free_vars();
      if (t.witness().is_var()) out.insert(t.witness().name);
      break;
    case K::ForallE:
      if (t.witness().is_var()) out.insert(t.witness().name);
      break;
    case K::ImplI:
      out = t.var().type.free_vars();
      break;
    case K::DisjE:
      out = t.var().type.free_vars();
      add_all(out, t.var2().type.free_vars());
      break;
    case K::ForallI: {
      auto body = ind_vars(t.arg(0));
      body.erase(t.name());
      return body;
    }
    case K::ExistsE: {
      add_all(out, ind_vars(t.arg(0)));
      auto inner = ind_vars(t.arg(1));
      add_all(inner, t.var().type.free_vars());
      inner.erase(t.name());
      add_all(out, inner);
      return out;
    }
    default:
      break;
  }
  for (const auto& a : t.args()) add_all(out, ind_vars(a));
  return out;
}

}  // namespace

std::vector<TypedVar> free_typed_vars(const Term& t) {
  std::set<TypedVar> bound, seen;
  std::vector<TypedVar> out;
  collect_typed(t, bound, out, seen);
  return out;
}

std::set<std::string> free_ind_vars(const Term& t) { return ind_vars(t); }

std::set<std::string> metas(const Term& t) {
  std::set<std::string> out;
  if (t.is(Term::Kind::Meta)) out.insert(t.name());
  for (const auto& a : t.args()) add_all(out, metas(a));
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

TypedVar subst_var_type(const TypedVar& v, const IndSubst& s) {
  return TypedVar{v.name, v.index, v.type.substitute(s)};
}

// Typed variables and individual variables free in the replacement terms
// relevant for a binder body.
struct Incoming {
  std::set<TypedVar> typed;
  std::set<std::string> individual;
};

Incoming incoming_for(const Term& body, const Substitution& s) {
  Incoming in;
  const auto body_typed = free_typed_vars(body);
  for (const auto& v : body_typed) {
    auto it = s.typed.find(v);
    if (it == s.typed.end()) continue;
    for (const auto& w : free_typed_vars(it->second)) in.typed.insert(w);
    add_all(in.individual, free_ind_vars(it->second));
  }
  const auto body_ind = free_ind_vars(body);
  for (const auto& [x, t] : s.individual)
    if (body_ind.count(x) && t.is_var()) in.individual.insert(t.name);
  return in;
}

// Removes a binder from the substitution; renames it when the incoming
// terms mention it. Returns the (possibly renamed) binder and body.
std::pair<TypedVar, Term> open_typed_binder(const TypedVar& binder, const Term& body, Substitution& s) {
  s.typed.erase(binder);
  const Incoming in = incoming_for(body, s);
  TypedVar b = binder;
  Term t = body;
  const TypedVar after = subst_var_type(b, s.individual);
  bool clash = false;
  for (const auto& w : in.typed)
    if (w.name == after.name && w.index == after.index) clash = true;
  if (clash) {
    std::set<TypedVar> avoid = in.typed;
    for (const auto& w : free_typed_vars(body)) avoid.insert(w);
    // Index bump keeps the name readable.
    TypedVar renamed = b;
    while (true) {
      ++renamed.index;
      bool taken = avoid.count(renamed) > 0;
      for (const auto& w : in.typed)
        if (w.name == renamed.name && w.index == renamed.index) taken = true;
      if (!taken) break;
    }
    Substitution r;
    r.typed.emplace(b, Term::var(renamed));
    t = substitute(body, r);
    b = renamed;
  }
  return {b, t};
}

std::pair<std::string, Term> open_ind_binder(const std::string& x, const Term& body, Substitution& s) {
  s.individual.erase(x);
  const Incoming in = incoming_for(body, s);
  if (!in.individual.count(x)) return {x, body};
  std::set<std::string> avoid = in.individual;
  add_all(avoid, free_ind_vars(body));
  for (const auto& [v, t] : s.individual) avoid.insert(v);
  const std::string y = background::fresh_name(x, avoid);
  Substitution r;
  r.individual.emplace(x, IndTerm::var(y));
  return {y, substitute(body, r)};
}

}  // namespace

Term substitute(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  using K = Term::Kind;
  const IndSubst& ind = s.individual;
  auto sub_args = [&](const Term& x) {
    std::vector<Term> out;
    out.reserve(x.args().size());
    for (const auto& a : x.args()) out.push_back(substitute(a, s));
    return out;
  };
  auto ind_term = [&](const IndTerm& w) {
    if (!w.is_var()) return w;
    auto it = ind.find(w.name);
    return it == ind.end() ? w : it->second;
  };
  switch (t.kind()) {
    case K::Var: {
      auto it = s.typed.find(t.var());
      if (it != s.typed.end()) return it->second;
      if (ind.empty()) return t;
      return Term::var(subst_var_type(t.var(), ind));
    }
    case K::Const:
      return Term::constant(t.name(), t.annotation().substitute(ind));
    case K::Meta:
      return t;
    case K::DisjI:
      return Term::disj_i(t.side(), t.annotation().substitute(ind), substitute(t.arg(0), s));
    case K::Exploder:
      return Term::exploder(t.annotation().substitute(ind), substitute(t.arg(0), s));
    case K::ExistsI:
      return Term::exists_i(ind_term(t.witness()), t.annotation().substitute(ind), substitute(t.arg(0), s));
    case K::ForallE:
      return Term::forall_e(ind_term(t.witness()), substitute(t.arg(0), s));
    case K::ImplI: {
      Substitution inner = s;
      auto [b, body] = open_typed_binder(t.var(), t.arg(0), inner);
      return Term::impl_i(subst_var_type(b, ind), substitute(body, inner));
    }
    case K::DisjE: {
      Term major = substitute(t.arg(0), s);
      Substitution left = s;
      auto [b1, u] = open_typed_binder(t.var(), t.arg(1), left);
      Substitution right = s;
      auto [b2, v] = open_typed_binder(t.var2(), t.arg(2), right);
      return Term::disj_e(subst_var_type(b1, ind), subst_var_type(b2, ind), major, substitute(u, left),
                          substitute(v, right));
    }
    case K::ForallI: {
      Substitution inner = s;
      auto [x, body] = open_ind_binder(t.name(), t.arg(0), inner);
      return Term::forall_i(x, substitute(body, inner));
    }
    case K::ExistsE: {
      Term major = substitute(t.arg(0), s);
      // The individual binder scopes over the typed binder's type and the
      // minor premise; wrap them in a throwaway ImplI to rename together.
      Term packed = Term::impl_i(t.var(), t.arg(1));
      Substitution inner = s;
      auto [x, packed2] = open_ind_binder(t.name(), packed, inner);
      auto [b, u] = open_typed_binder(packed2.var(), packed2.arg(0), inner);
      return Term::exists_e(x, subst_var_type(b, inner.individual), major, substitute(u, inner));
    }
    default:
      return t.with_args(sub_args(t));
  }
}

// ---------------------------------------------------------------------------
// Parsing

TypedVar parse_typed_var(const SExpr& e, const background::FormulaSyntax& syntax) {
  if (!e.is_form("var")) e.fail("expected (var NAME [INDEX] TYPE)");
  if (e.size() == 3) return TypedVar{e[1].text(), 0, background::parse_formula(e[2], syntax)};
  if (e.size() == 4) {
    int index = 0;
    try {
      index = std::stoi(e[2].text());
    } catch (const std::exception&) {
      e[2].fail("variable index must be an integer");
    }
    return TypedVar{e[1].text(), index, background::parse_formula(e[3], syntax)};
  }
  e.fail("expected (var NAME [INDEX] TYPE)");
}

Term parse_term(const SExpr& e, const background::FormulaSyntax& syntax) {
  auto ind = [&](const SExpr& a) {
    const std::string& n = a.text();
    return syntax.constants.count(n) ? IndTerm::constant(n) : IndTerm::var(n);
  };
  auto formula = [&](const SExpr& a) { return background::parse_formula(a, syntax); };
  auto sub = [&](const SExpr& a) { return parse_term(a, syntax); };
  auto side = [&](const SExpr& a) {
    const std::string& s = a.text();
    if (s != "1" && s != "2") a.fail("side must be 1 or 2");
    return s == "1" ? 1 : 2;
  };
  if (e.is_atom()) {
    const std::string& s = e.text();
    if (s.size() > 1 && s[0] == '?') return Term::meta(s.substr(1));
    e.fail("unexpected atom '" + s + "' in term position");
  }
  const std::string h = e.head();
  const std::size_t n = e.size();
  auto arity = [&](std::size_t k) {
    if (n != k + 1)
      e.fail("'" + h + "' expects " + std::to_string(k) + " argument(s), got " + std::to_string(n - 1));
  };
  if (h == "var") return Term::var(parse_typed_var(e, syntax));
  if (h == "const") {
    arity(2);
    return Term::constant(e[1].text(), formula(e[2]));
  }
  if (h == "and-i") {
    arity(2);
    return Term::conj_i(sub(e[1]), sub(e[2]));
  }
  if (h == "or-i") {
    arity(3);
    Formula d = formula(e[2]);
    if (!d.is(Formula::Kind::Disj)) e[2].fail("or-i annotation must be a disjunction");
    return Term::disj_i(side(e[1]), d, sub(e[3]));
  }
  if (h == "impl-i") {
    arity(2);
    return Term::impl_i(parse_typed_var(e[1], syntax), sub(e[2]));
  }
  if (h == "forall-i") {
    arity(2);
    return Term::forall_i(e[1].text(), sub(e[2]));
  }
  if (h == "exists-i") {
    arity(3);
    Formula ex = formula(e[2]);
    if (!ex.is(Formula::Kind::Exists)) e[2].fail("exists-i annotation must be existential");
    return Term::exists_i(ind(e[1]), ex, sub(e[3]));
  }
  if (h == "explode") {
    arity(2);
    return Term::exploder(formula(e[1]), sub(e[2]));
  }
  if (h == "and-e") {
    arity(2);
    return Term::conj_e(side(e[1]), sub(e[2]));
  }
  if (h == "or-e") {
    arity(5);
    return Term::disj_e(parse_typed_var(e[1], syntax), parse_typed_var(e[2], syntax), sub(e[3]), sub(e[4]),
                        sub(e[5]));
  }
  if (h == "impl-e") {
    arity(2);
    return Term::impl_e(sub(e[1]), sub(e[2]));
  }
  if (h == "forall-e") {
    arity(2);
    return Term::forall_e(ind(e[1]), sub(e[2]));
  }
  if (h == "exists-e") {
    arity(4);
    return Term::exists_e(e[1].text(), parse_typed_var(e[2], syntax), sub(e[3]), sub(e[4]));
  }
  if (h == "ds") {
    arity(2);
    return Term::ds(sub(e[1]), sub(e[2]));
  }
  if (h == "op") {
    if (n < 2) e.fail("(op NAME ARG...) needs a name");
    std::vector<Term> args;
    for (std::size_t i = 2; i < n; ++i) args.push_back(sub(e[i]));
    return Term::user_op(e[1].text(), std::move(args));
  }
  if (h == "meta") {
    arity(1);
    return Term::meta(e[1].text());
  }
  e.fail("unknown term form '" + (h.empty() ? e.to_string() : h) + "'");
}

Term parse_term(const std::string& text, const background::FormulaSyntax& syntax) {
  return parse_term(parse_sexpr(text), syntax);
}

}  // namespace groundwork::grounds
