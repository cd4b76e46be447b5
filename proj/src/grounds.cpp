#include "groundwork/grounds.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace groundwork::grounds {

using FK = Formula::Kind;
using TK = Term::Kind;

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(AtomicBase base, Language language) : base_(std::move(base)), language_(language) {}

void Signature::register_constant(const std::string& name, AtomicDerivation derivation) {
  Report r = background::check_atomic_derivation(derivation, base_);
  if (!ok(r)) {
    std::ostringstream msg;
    msg << "constant '" << name << "': " << r.front();
    throw std::invalid_argument(msg.str());
  }
  constants_[name] = std::move(derivation);
}

const AtomicDerivation* Signature::constant(const std::string& name) const {
  auto it = constants_.find(name);
  return it == constants_.end() ? nullptr : &it->second;
}

void Signature::declare_op(OpDecl decl) {
  if (decl.name.empty()) throw std::invalid_argument("operation needs a name");
  ops_[decl.name] = std::move(decl);
}

const OpDecl* Signature::op(const std::string& name) const {
  auto it = ops_.find(name);
  return it == ops_.end() ? nullptr : &it->second;
}

void Signature::add_equation(Equation eq) {
  if (!eq.lhs.is(TK::UserOp)) throw std::invalid_argument("equation '" + eq.name + "': left side must be (op ...)");
  if (!op(eq.lhs.name()))
    throw std::invalid_argument("equation '" + eq.name + "': undeclared symbol '" + eq.lhs.name() + "'");
  const auto left = metas(eq.lhs);
  for (const auto& m : metas(eq.rhs))
    if (!left.count(m))
      throw std::invalid_argument("equation '" + eq.name + "': ?" + m + " occurs only on the right");
  if (eq.name.empty()) eq.name = "eq" + std::to_string(equations_.size() + 1);
  equations_.push_back(std::move(eq));
}

// ---------------------------------------------------------------------------
// Typing

std::vector<Formula> GroundType::antecedents() const {
  std::vector<Formula> out;
  for (const auto& v : assumptions) out.push_back(v.type);
  return out;
}

std::string GroundType::pretty() const {
  std::string s;
  for (std::size_t i = 0; i < assumptions.size(); ++i) {
    if (i) s += ", ";
    s += assumptions[i].type.pretty();
  }
  return (s.empty() ? "⊢ " : s + " ⊢ ") + succedent.pretty();
}

TypeError::TypeError(const std::string& message, Term subterm, std::string expected, std::string actual)
    : std::runtime_error(message), subterm_(std::move(subterm)), expected_(std::move(expected)),
      actual_(std::move(actual)) {}

namespace {

[[noreturn]] void mismatch(const Term& t, const std::string& what, const Formula& expected, const Formula& actual) {
  throw TypeError(what + ": expected " + expected.pretty() + ", got " + actual.pretty() + " in " + t.pretty(), t,
                  expected.pretty(), actual.pretty());
}

[[noreturn]] void bad_shape(const Term& t, const std::string& what, const std::string& expected,
                            const Formula& actual) {
  throw TypeError(what + ": expected " + expected + ", got " + actual.pretty() + " in " + t.pretty(), t, expected,
                  actual.pretty());
}

bool allowed(TK k, Language l) {
  switch (k) {
    case TK::ConjE:
    case TK::DisjE:
    case TK::ImplE:
    case TK::ForallE:
    case TK::ExistsE:
      return l != Language::C;
    case TK::DS:
      return l == Language::CStarDS;
    default:
      return true;
  }
}

void check_formula(const Term& t, const Formula& f, const Signature& sig) {
  if (sig.base().relations().empty()) return;
  Report r = sig.base().check_signature(f);
  if (!ok(r)) throw TypeError(r.front().code + " " + r.front().message + " in " + t.pretty(), t);
}

bool assumption_mentions(const Term& t, const std::string& x, const TypedVar* except = nullptr) {
  for (const auto& v : free_typed_vars(t)) {
    if (except && v == *except) continue;
    if (v.type.free_vars().count(x)) return true;
  }
  return false;
}

Formula infer(const Term& t, const Signature& sig) {
  if (!allowed(t.kind(), sig.language()))
    throw TypeError("symbol not available in language " + to_string(sig.language()) + ": " + t.pretty(), t);
  switch (t.kind()) {
    case TK::Var:
      check_formula(t, t.var().type, sig);
      return t.var().type;
    case TK::Const:
      check_formula(t, t.annotation(), sig);
      return t.annotation();
    case TK::ConjI:
      return Formula::conj(infer(t.arg(0), sig), infer(t.arg(1), sig));
    case TK::DisjI: {
      const Formula& d = t.annotation();
      if (!d.is(FK::Disj)) bad_shape(t, "∨I annotation", "a disjunction", d);
      check_formula(t, d, sig);
      const Formula& want = t.side() == 1 ? d.left() : d.right();
      Formula got = infer(t.arg(0), sig);
      if (!(got == want)) mismatch(t, "∨I premise", want, got);
      return d;
    }
    case TK::ImplI:
      check_formula(t, t.var().type, sig);
      return Formula::impl(t.var().type, infer(t.arg(0), sig));
    case TK::ForallI: {
      if (assumption_mentions(t.arg(0), t.name()))
        throw TypeError("eigenvariable " + t.name() + " is free in an open assumption of " + t.pretty(), t);
      return Formula::forall(t.name(), infer(t.arg(0), sig));
    }
    case TK::ExistsI: {
      const Formula& e = t.annotation();
      if (!e.is(FK::Exists)) bad_shape(t, "∃I annotation", "an existential", e);
      check_formula(t, e, sig);
      Formula want = e.body().substitute(e.bound_var(), t.witness());
      Formula got = infer(t.arg(0), sig);
      if (!(got == want)) mismatch(t, "∃I premise", want, got);
      return e;
    }
    case TK::Exploder: {
      Formula got = infer(t.arg(0), sig);
      if (!got.is(FK::Absurd)) mismatch(t, "explosion premise", Formula::absurd(), got);
      check_formula(t, t.annotation(), sig);
      return t.annotation();
    }
    case TK::ConjE: {
      Formula a = infer(t.arg(0), sig);
      if (!a.is(FK::Conj)) bad_shape(t, "∧E premise", "a conjunction", a);
      return t.side() == 1 ? a.left() : a.right();
    }
    case TK::DisjE: {
      Formula a = infer(t.arg(0), sig);
      if (!a.is(FK::Disj)) bad_shape(t, "∨E major premise", "a disjunction", a);
      if (!(t.var().type == a.left())) mismatch(t, "∨E left binder", a.left(), t.var().type);
      if (!(t.var2().type == a.right())) mismatch(t, "∨E right binder", a.right(), t.var2().type);
      Formula u = infer(t.arg(1), sig);
      Formula v = infer(t.arg(2), sig);
      if (!(u == v)) mismatch(t, "∨E minor premises", u, v);
      return u;
    }
    case TK::ImplE: {
      Formula f = infer(t.arg(0), sig);
      if (!f.is(FK::Impl)) bad_shape(t, "→E major premise", "an implication", f);
      Formula a = infer(t.arg(1), sig);
      if (!(a == f.left())) mismatch(t, "→E argument", f.left(), a);
      return f.right();
    }
    case TK::ForallE: {
      Formula f = infer(t.arg(0), sig);
      if (!f.is(FK::Forall)) bad_shape(t, "∀E premise", "a universal", f);
      return f.body().substitute(f.bound_var(), t.witness());
    }
    case TK::ExistsE: {
      Formula e = infer(t.arg(0), sig);
      if (!e.is(FK::Exists)) bad_shape(t, "∃E major premise", "an existential", e);
      Formula want = e.body().substitute(e.bound_var(), IndTerm::var(t.name()));
      if (!(t.var().type == want)) mismatch(t, "∃E binder", want, t.var().type);
      Formula c = infer(t.arg(1), sig);
      if (c.free_vars().count(t.name()))
        throw TypeError("eigenvariable " + t.name() + " is free in the conclusion of " + t.pretty(), t);
      if (assumption_mentions(t.arg(1), t.name(), &t.var()))
        throw TypeError("eigenvariable " + t.name() + " is free in an open assumption of " + t.pretty(), t);
      return c;
    }
    case TK::DS: {
      Formula d = infer(t.arg(0), sig);
      if (!d.is(FK::Disj)) bad_shape(t, "DS first argument", "a disjunction", d);
      Formula n = infer(t.arg(1), sig);
      Formula want = Formula::negation(d.left());
      if (!(n == want)) mismatch(t, "DS second argument", want, n);
      return d.right();
    }
    case TK::UserOp: {
      const OpDecl* op = sig.op(t.name());
      if (!op) throw TypeError("undeclared symbol '" + t.name() + "'", t);
      if (op->arg_types.size() != t.args().size())
        throw TypeError("'" + t.name() + "' expects " + std::to_string(op->arg_types.size()) + " argument(s)", t);
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        Formula a = infer(t.arg(i), sig);
        if (!(a == op->arg_types[i])) mismatch(t, "argument " + std::to_string(i + 1) + " of " + t.name(),
                                               op->arg_types[i], a);
      }
      return op->result;
    }
    case TK::Meta:
      throw TypeError("metavariable ?" + t.name() + " outside an equation", t);
  }
  throw TypeError("unknown term", t);
}

}  // namespace

GroundType typecheck(const Term& t, const Signature& sig) {
  GroundType g;
  g.succedent = infer(t, sig);
  g.assumptions = free_typed_vars(t);
  g.free_individuals = free_ind_vars(t);
  return g;
}

Formula type_of(const Term& t, const Signature& sig) { return infer(t, sig); }

// ---------------------------------------------------------------------------
// Reduction

std::string position_string(const Position& p) {
  if (p.empty()) return "root";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ".";
    s += std::to_string(p[i] + 1);
  }
  return s;
}

namespace {

bool same_payload(const Term& p, const Term& t) {
  if (p.kind() != t.kind() || p.args().size() != t.args().size()) return false;
  switch (p.kind()) {
    case TK::Var:
      return p.var() == t.var();
    case TK::Const:
      return p.name() == t.name() && p.annotation() == t.annotation();
    case TK::DisjI:
      return p.side() == t.side() && p.annotation() == t.annotation();
    case TK::ImplI:
      return p.var() == t.var();
    case TK::ForallI:
    case TK::UserOp:
      return p.name() == t.name();
    case TK::ExistsI:
      return p.witness() == t.witness() && p.annotation() == t.annotation();
    case TK::Exploder:
      return p.annotation() == t.annotation();
    case TK::ConjE:
      return p.side() == t.side();
    case TK::DisjE:
      return p.var() == t.var() && p.var2() == t.var2();
    case TK::ForallE:
      return p.witness() == t.witness();
    case TK::ExistsE:
      return p.name() == t.name() && p.var() == t.var();
    default:
      return true;
  }
}

bool match(const Term& pattern, const Term& t, std::map<std::string, Term>& binding) {
  if (pattern.is(TK::Meta)) {
    auto [it, fresh] = binding.emplace(pattern.name(), t);
    return fresh || it->second == t;
  }
  if (!same_payload(pattern, t)) return false;
  for (std::size_t i = 0; i < t.args().size(); ++i)
    if (!match(pattern.arg(i), t.arg(i), binding)) return false;
  return true;
}

Term instantiate(const Term& pattern, const std::map<std::string, Term>& binding) {
  if (pattern.is(TK::Meta)) return binding.at(pattern.name());
  if (pattern.args().empty()) return pattern;
  std::vector<Term> args;
  for (const auto& a : pattern.args()) args.push_back(instantiate(a, binding));
  return pattern.with_args(std::move(args));
}

Term beta(const TypedVar& v, const Term& body, const Term& arg) {
  Substitution s;
  s.typed.emplace(v, arg);
  return substitute(body, s);
}

std::optional<std::pair<Term, std::string>> root_redex(const Term& t, const Signature& sig) {
  switch (t.kind()) {
    case TK::ImplE: {
      const Term& f = t.arg(0);
      if (f.is(TK::ImplI)) return std::make_pair(beta(f.var(), f.arg(0), t.arg(1)), std::string("impl-e"));
      break;
    }
    case TK::DisjE: {
      const Term& d = t.arg(0);
      if (d.is(TK::DisjI)) {
        if (d.side() == 1) return std::make_pair(beta(t.var(), t.arg(1), d.arg(0)), std::string("or-e"));
        return std::make_pair(beta(t.var2(), t.arg(2), d.arg(0)), std::string("or-e"));
      }
      break;
    }
    case TK::ConjE: {
      const Term& c = t.arg(0);
      if (c.is(TK::ConjI)) return std::make_pair(c.arg(t.side() - 1), std::string("and-e"));
      break;
    }
    case TK::ForallE: {
      const Term& g = t.arg(0);
      if (g.is(TK::ForallI)) {
        Substitution s;
        s.individual.emplace(g.name(), t.witness());
        return std::make_pair(substitute(g.arg(0), s), std::string("forall-e"));
      }
      break;
    }
    case TK::ExistsE: {
      const Term& e = t.arg(0);
      if (e.is(TK::ExistsI)) {
        Substitution s;
        s.individual.emplace(t.name(), e.witness());
        s.typed.emplace(t.var(), e.arg(0));
        return std::make_pair(substitute(t.arg(1), s), std::string("exists-e"));
      }
      break;
    }
    case TK::DS: {
      const Term& d = t.arg(0);
      if (d.is(TK::DisjI)) {
        if (d.side() == 2) return std::make_pair(d.arg(0), std::string("ds-right"));
        // The second argument is the refutation of the left disjunct, so it
        // is the function position.
        const Formula& target = d.annotation().right();
        return std::make_pair(Term::exploder(target, Term::impl_e(t.arg(1), d.arg(0))), std::string("ds-left"));
      }
      break;
    }
    case TK::UserOp:
      for (const auto& eq : sig.equations()) {
        std::map<std::string, Term> binding;
        if (match(eq.lhs, t, binding)) return std::make_pair(instantiate(eq.rhs, binding), eq.name);
      }
      break;
    default:
      break;
  }
  return std::nullopt;
}

std::optional<Step> step_at(const Term& t, const Signature& sig, Position& pos) {
  if (auto r = root_redex(t, sig)) return Step{r->first, pos, r->second};
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    pos.push_back(i);
    auto s = step_at(t.arg(i), sig, pos);
    pos.pop_back();
    if (s) {
      std::vector<Term> args = t.args();
      args[i] = s->result;
      s->result = t.with_args(std::move(args));
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Step> reduce_root(const Term& t, const Signature& sig) {
  if (auto r = root_redex(t, sig)) return Step{r->first, {}, r->second};
  return std::nullopt;
}

std::optional<Step> reduce_step(const Term& t, const Signature& sig) {
  Position pos;
  return step_at(t, sig, pos);
}

std::string to_string(ReductionOutcome::Tag tag) {
  switch (tag) {
    case ReductionOutcome::Tag::Canonical:
      return "Canonical";
    case ReductionOutcome::Tag::Loop:
      return "Loop";
    case ReductionOutcome::Tag::FuelExhausted:
      return "FuelExhausted";
    case ReductionOutcome::Tag::Stuck:
      return "Stuck";
  }
  return "?";
}

ReductionOutcome normalize(const Term& t, const Signature& sig, std::size_t fuel) {
  using Tag = ReductionOutcome::Tag;
  ReductionOutcome out{Tag::Stuck, t, {}, {}, {t}};
  std::unordered_map<std::string, std::size_t> seen;
  seen.emplace(t.key(), 0);
  Term cur = t;
  while (true) {
    if (cur.is_primitive_head()) {
      out.tag = Tag::Canonical;
      break;
    }
    if (out.trace.size() >= fuel) {
      out.tag = Tag::FuelExhausted;
      break;
    }
    auto step = reduce_step(cur, sig);
    if (!step) {
      out.tag = Tag::Stuck;
      break;
    }
    out.trace.push_back({step->position, step->equation});
    cur = step->result;
    out.history.push_back(cur);
    auto [it, fresh] = seen.emplace(cur.key(), out.history.size() - 1);
    if (!fresh) {
      out.tag = Tag::Loop;
      out.cycle.assign(out.history.begin() + static_cast<std::ptrdiff_t>(it->second), out.history.end());
      break;
    }
  }
  out.term = cur;
  return out;
}

// ---------------------------------------------------------------------------
// Groundhood

std::string to_string(GroundVerdict::Tag tag) {
  switch (tag) {
    case GroundVerdict::Tag::Yes:
      return "yes";
    case GroundVerdict::Tag::No:
      return "no";
    case GroundVerdict::Tag::Unknown:
      return "unknown";
  }
  return "?";
}

namespace {

using GV = GroundVerdict;

GV yes(std::string r = {}) { return {GV::Tag::Yes, std::move(r)}; }
GV no(std::string r) { return {GV::Tag::No, std::move(r)}; }
GV unknown(std::string r) { return {GV::Tag::Unknown, std::move(r)}; }

class GroundChecker {
 public:
  GroundChecker(const Signature& sig, const GroundOptions& opt) : sig_(sig), opt_(opt) {}

  GV check(const Term& t, const Formula& type, int depth = 0) {
    if (depth > 64) return unknown("nesting limit reached");
    if (type.is(FK::Absurd)) return no("no term denotes a ground for 0");
    ReductionOutcome r = normalize(t, sig_, opt_.fuel);
    switch (r.tag) {
      case ReductionOutcome::Tag::Loop:
        return no("reduction loops at " + r.cycle.front().pretty());
      case ReductionOutcome::Tag::Stuck:
        return no("reduction is stuck at " + r.term.pretty());
      case ReductionOutcome::Tag::FuelExhausted:
        return unknown("fuel exhausted after " + std::to_string(r.trace.size()) + " steps");
      case ReductionOutcome::Tag::Canonical:
        break;
    }
    const Term& u = r.term;
    if (u.is(TK::Exploder)) return no("canonical form is headed by 0_A");
    switch (type.kind()) {
      case FK::Atom: {
        if (!u.is(TK::Const)) return no("expected a constant for atomic " + type.pretty() + ", got " + u.pretty());
        const AtomicDerivation* d = sig_.constant(u.name());
        if (!d) return no("constant " + u.name() + " is not registered for an atomic derivation");
        if (!(d->conclusion == type))
          return no("constant " + u.name() + " names a derivation of " + d->conclusion.pretty());
        return yes("atomic");
      }
      case FK::Conj: {
        if (!u.is(TK::ConjI)) return no("expected ∧I, got " + u.pretty());
        GV a = check(u.arg(0), type.left(), depth + 1);
        if (a.tag != GV::Tag::Yes) return a;
        return check(u.arg(1), type.right(), depth + 1);
      }
      case FK::Disj: {
        if (!u.is(TK::DisjI)) return no("expected ∨I, got " + u.pretty());
        return check(u.arg(0), u.side() == 1 ? type.left() : type.right(), depth + 1);
      }
      case FK::Exists: {
        if (!u.is(TK::ExistsI)) return no("expected ∃I, got " + u.pretty());
        return check(u.arg(0), type.body().substitute(type.bound_var(), u.witness()), depth + 1);
      }
      case FK::Impl: {
        if (!u.is(TK::ImplI)) return no("expected →I, got " + u.pretty());
        std::size_t tried = 0;
        bool undecided = false;
        for (const auto& s : opt_.pool) {
          if (tried >= opt_.samples) break;
          Formula st;
          try {
            GroundType g = typecheck(s, sig_);
            if (!g.closed()) continue;
            st = g.succedent;
          } catch (const TypeError&) {
            continue;
          }
          if (!(st == type.left())) continue;
          GV arg = check(s, st, depth + 1);
          if (arg.tag != GV::Tag::Yes) continue;
          ++tried;
          GV res = check(beta(u.var(), u.arg(0), s), type.right(), depth + 1);
          if (res.tag == GV::Tag::No) return no("instance at " + s.pretty() + ": " + res.reason);
          if (res.tag == GV::Tag::Unknown) undecided = true;
        }
        if (undecided) return unknown("some sampled instances did not settle");
        return yes(tried ? std::to_string(tried) + " sampled instance(s)" : "structural");
      }
      case FK::Forall: {
        if (!u.is(TK::ForallI)) return no("expected ∀I, got " + u.pretty());
        std::size_t tried = 0;
        bool undecided = false;
        for (const auto& c : sig_.base().constants()) {
          if (tried >= opt_.samples) break;
          ++tried;
          Substitution s;
          s.individual.emplace(u.name(), IndTerm::constant(c));
          GV res = check(substitute(u.arg(0), s), type.body().substitute(type.bound_var(), IndTerm::constant(c)),
                         depth + 1);
          if (res.tag == GV::Tag::No) return no("instance at " + c + ": " + res.reason);
          if (res.tag == GV::Tag::Unknown) undecided = true;
        }
        if (undecided) return unknown("some sampled instances did not settle");
        return yes(tried ? std::to_string(tried) + " sampled instance(s)" : "structural");
      }
      case FK::Absurd:
        break;
    }
    return no("no clause applies");
  }

 private:
  const Signature& sig_;
  const GroundOptions& opt_;
};

}  // namespace

GroundVerdict denotes_ground(const Term& t, const Signature& sig, const GroundOptions& options) {
  GroundType g;
  try {
    g = typecheck(t, sig);
  } catch (const TypeError& e) {
    return no(std::string("ill-typed: ") + e.what());
  }
  if (!g.closed()) return no("term is open: type " + g.pretty());
  GroundChecker checker(sig, options);
  return checker.check(t, g.succedent);
}

// ---------------------------------------------------------------------------
// Closed instances

Term close_instance(const Term& t, const Assignment& a, const Signature& sig) {
  for (const auto& x : free_ind_vars(t)) {
    auto it = a.individual.find(x);
    if (it == a.individual.end()) throw InstanceError("missing-assignment", "no value for individual " + x);
    if (it->second.is_var())
      throw InstanceError("type-mismatch", "individual " + x + " must be assigned a closed term");
  }
  Substitution s;
  s.individual = a.individual;
  for (const auto& v : free_typed_vars(t)) {
    auto it = a.typed.find(v);
    if (it == a.typed.end()) throw InstanceError("missing-assignment", "no value for " + v.pretty());
    GroundType g;
    try {
      g = typecheck(it->second, sig);
    } catch (const TypeError& e) {
      throw InstanceError("type-mismatch", "value for " + v.pretty() + " is ill-typed: " + e.what());
    }
    if (!g.closed()) throw InstanceError("type-mismatch", "value for " + v.pretty() + " is not closed");
    const Formula want = v.type.substitute(a.individual);
    if (!(g.succedent == want))
      throw InstanceError("type-mismatch", "value for " + v.pretty() + " has type " + g.succedent.pretty() +
                                               ", expected " + want.pretty());
    s.typed.emplace(v, it->second);
  }
  return substitute(t, s);
}

// ---------------------------------------------------------------------------
// Linearity

namespace {

std::size_t occurrences(const Term& t, const TypedVar& v) {
  if (t.is(TK::Var)) return t.var() == v ? 1 : 0;
  // Shadowing binders hide v.
  if (t.is(TK::ImplI) && t.var() == v) return 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (t.is(TK::DisjE) && ((i == 1 && t.var() == v) || (i == 2 && t.var2() == v))) continue;
    if (t.is(TK::ExistsE) && i == 1 && t.var() == v) continue;
    n += occurrences(t.arg(i), v);
  }
  return n;
}

}  // namespace

bool is_linear(const Term& t) {
  if (t.is(TK::ImplI) && occurrences(t.arg(0), t.var()) != 1) return false;
  return std::all_of(t.args().begin(), t.args().end(), [](const Term& a) { return is_linear(a); });
}

// ---------------------------------------------------------------------------
// Signature files

Language parse_language(const std::string& s) {
  if (s == "C") return Language::C;
  if (s == "C*") return Language::CStar;
  if (s == "C*+DS") return Language::CStarDS;
  throw std::invalid_argument("unknown language '" + s + "' (expected C, C* or C*+DS)");
}

std::string to_string(Language l) {
  switch (l) {
    case Language::C:
      return "C";
    case Language::CStar:
      return "C*";
    case Language::CStarDS:
      return "C*+DS";
  }
  return "?";
}

Signature parse_signature(const SExpr& e, AtomicBase base) {
  if (!e.is_form("signature")) e.fail("expected (signature ...)");
  Signature sig(std::move(base));
  const auto syntax = sig.base().syntax();
  for (std::size_t i = 1; i < e.size(); ++i) {
    const SExpr& part = e[i];
    try {
      if (part.is_form("language")) {
        if (part.size() != 2) part.fail("(language C|C*|C*+DS)");
        sig.set_language(parse_language(part[1].text()));
      } else if (part.is_form("op")) {
        if (part.size() != 4 || !part[2].is_list()) part.fail("(op NAME (ARG-TYPE...) RESULT-TYPE)");
        OpDecl d{part[1].text(), {}, background::parse_formula(part[3], syntax)};
        for (const auto& a : part[2].items()) d.arg_types.push_back(background::parse_formula(a, syntax));
        sig.declare_op(std::move(d));
      } else if (part.is_form("constant")) {
        if (part.size() != 3) part.fail("(constant NAME (deriv ...))");
        sig.register_constant(part[1].text(), background::parse_derivation(part[2], syntax));
      } else if (part.is_form("equation")) {
        if (part.size() != 4) part.fail("(equation NAME LHS RHS)");
        sig.add_equation({part[1].text(), parse_term(part[2], syntax), parse_term(part[3], syntax)});
      } else {
        part.fail("unexpected item in signature");
      }
    } catch (const std::invalid_argument& ex) {
      part.fail(ex.what());
    }
  }
  return sig;
}

}  // namespace groundwork::grounds
