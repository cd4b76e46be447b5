#include "groundwork/translation.hpp"

#include <algorithm>
#include <optional>

#include "groundwork/grounds.hpp"

namespace groundwork::translation {

using background::Formula;
using FK = Formula::Kind;
using TK = Term::Kind;
using namespace ludics;

ludics::UniverseBounds TranslationEnv::default_bounds() {
  UniverseBounds b;
  b.max_depth = 3;
  b.pool = powerset_pool(1);
  return b;
}

std::vector<Design> free_incarnation(const Behaviour& b) {
  std::vector<Design> out;
  for (auto& d : b.members())
    if (!contains_daimon(d) && is_material(d, b)) out.push_back(std::move(d));
  return out;
}

namespace {

const Address& single_positive(const Behaviour& b) {
  if (!b.base().is_positive() || b.base().positive.size() != 1)
    throw std::invalid_argument("arrow: expected a behaviour on ⊢ξ, got " + to_string(b.base()));
  return *b.base().positive.begin();
}

}  // namespace

ArrowBehaviour arrow(const Behaviour& a, const Behaviour& b, const UniverseBounds& bounds) {
  const Address alpha = single_positive(a);
  const Address beta = single_positive(b);
  if (!disjoint(alpha, beta)) throw std::invalid_argument("arrow: domain and codomain addresses overlap");
  const UniverseBounds ub = bounds.with_base(negative_base(alpha, {beta}));
  const auto fa = free_incarnation(a);
  const auto fb = free_incarnation(b);
  std::vector<Design> defining;
  for (auto& f : enumerate_universe(ub)) {
    bool keep = true;
    for (const auto& d : fa) {
      InteractionResult r = normalize(make_cutnet({d, f}), bounds.fuel);
      if (!r.converged() || !std::binary_search(fb.begin(), fb.end(), *r.result)) {
        keep = false;
        break;
      }
    }
    if (keep) defining.push_back(std::move(f));
  }
  Behaviour closed(defining, ub);
  return ArrowBehaviour{a, b, std::move(defining), fa.empty(), std::move(closed)};
}

Behaviour atom_behaviour(const Formula& atom, const Address& xi, const TranslationEnv& env) {
  std::string name;
  if (atom.is(FK::Absurd))
    name = "0";
  else if (atom.is(FK::Atom) && atom.args().empty())
    name = atom.predicate();
  else
    throw TranslationError("unsupported-constructor", "type " + atom.pretty() + " is not an atom");
  auto it = env.atoms.find(name);
  std::vector<Design> gens;
  if (it != env.atoms.end()) {
    for (const auto& g : it->second) {
      if (!g.base.is_positive() || g.base.positive.size() != 1)
        throw TranslationError("unknown-atom", "generators of " + name + " must be on ⊢γ");
      gens.push_back(relocate(g, *g.base.positive.begin(), xi));
    }
  } else if (name == "0") {
    gens.push_back(daimon(positive_base({xi})));
  } else {
    throw TranslationError("unknown-atom", "no behaviour for atom " + name);
  }
  return Behaviour(std::move(gens), env.bounds.with_base(positive_base({xi})));
}

Behaviour type_behaviour(const Formula& type, const Pitchfork& base, const TranslationEnv& env) {
  if (type.is(FK::Impl)) {
    if (!base.negative || base.positive.size() != 1)
      throw TranslationError("ill-typed", "a function design needs a base α ⊢ β, got " + to_string(base));
    Behaviour a = atom_behaviour(type.left(), *base.negative, env);
    Behaviour b = atom_behaviour(type.right(), *base.positive.begin(), env);
    return arrow(a, b, env.bounds).behaviour;
  }
  if (!base.is_positive() || base.positive.size() != 1)
    throw TranslationError("ill-typed", "a value design needs a base ⊢β, got " + to_string(base));
  return atom_behaviour(type, *base.positive.begin(), env);
}

namespace {

bool atomic(const Formula& f) { return f.is(FK::Absurd) || (f.is(FK::Atom) && f.args().empty()); }

void check_type(const Formula& f) {
  if (atomic(f)) return;
  if (f.is(FK::Impl) && atomic(f.left()) && atomic(f.right())) return;
  throw TranslationError("unsupported-constructor", "type " + f.pretty() + " is outside atoms and A → B");
}

Formula type_in(const Term& t) {
  switch (t.kind()) {
    case TK::Var:
      return t.var().type;
    case TK::Const:
      return t.annotation();
    case TK::ImplI:
      return Formula::impl(t.var().type, type_in(t.arg(0)));
    case TK::ImplE: {
      const Formula f = type_in(t.arg(0));
      const Formula a = type_in(t.arg(1));
      if (!f.is(FK::Impl) || !(f.left() == a))
        throw TranslationError("ill-typed", "cannot apply " + t.arg(0).pretty() + " to " + t.arg(1).pretty());
      return f.right();
    }
    default:
      throw TranslationError("unsupported-constructor", "only variables, constants, →I and →E translate, not " +
                                                            t.pretty());
  }
}

bool occurs(const Term& t, const grounds::TypedVar& x) {
  const auto fv = grounds::free_typed_vars(t);
  return std::find(fv.begin(), fv.end(), x) != fv.end();
}

struct Input {
  grounds::TypedVar var;
  Address at;
};

class Translator {
 public:
  explicit Translator(TranslationEnv& env) : env_(env) {}

  // Atomic-typed term on ⊢β, or on α ⊢ β when the bound variable occurs.
  Design value(const Term& t, const Address& beta, const std::optional<Input>& in) {
    check_type(type_in(t));
    switch (t.kind()) {
      case TK::Var:
        if (!in || !(t.var() == in->var))
          throw TranslationError("unsupported-constructor", "free variable " + t.var().pretty());
        return build_fax(in->at, beta, fax_depth(), env_.bounds.pool);
      case TK::Const: {
        const Design& c = constant(t);
        if (!c.base.is_positive() || c.base.positive.size() != 1)
          throw TranslationError("unknown-constant", "constant " + t.name() + " needs a design on ⊢γ");
        return relocate(c, *c.base.positive.begin(), beta);
      }
      case TK::ImplE: {
        if (in && occurs(t.arg(0), in->var))
          throw TranslationError("unsupported-constructor",
                                 "function part of " + t.pretty() + " depends on a bound variable");
        const Address alpha = env_.fresh();
        Design fn = function(t.arg(0), alpha, beta);
        Design arg = value(t.arg(1), alpha, in && occurs(t.arg(1), in->var) ? in : std::nullopt);
        InteractionResult r = normalize(make_cutnet({arg, fn}), env_.bounds.fuel);
        if (!r.converged())
          throw TranslationError("diverged-application", "interaction for " + t.pretty() + " " + to_string(r.tag) +
                                                             (r.tag == InteractionResult::Tag::Diverged
                                                                  ? " (" + to_string(r.reason) + ")"
                                                                  : ""));
        return *r.result;
      }
      default:
        throw TranslationError("unsupported-constructor", "cannot translate " + t.pretty() + " as a value");
    }
  }

  // Closed function term on α ⊢ β.
  Design function(const Term& t, const Address& alpha, const Address& beta) {
    check_type(type_in(t));
    switch (t.kind()) {
      case TK::ImplI:
        return value(t.arg(0), beta, Input{t.var(), alpha});
      case TK::Const: {
        const Design& c = constant(t);
        if (!c.base.negative || c.base.positive.size() != 1)
          throw TranslationError("unknown-constant", "constant " + t.name() + " needs a design on γ ⊢ δ");
        Design moved = relocate(c, *c.base.negative, alpha);
        return relocate(moved, *c.base.positive.begin(), beta);
      }
      default:
        throw TranslationError("unsupported-constructor", "cannot translate " + t.pretty() + " as a function");
    }
  }

 private:
  TranslationEnv& env_;

  std::size_t fax_depth() const { return env_.fax_depth ? env_.fax_depth : env_.bounds.max_depth; }

  const Design& constant(const Term& t) const {
    auto it = env_.constants.find(t.name());
    if (it == env_.constants.end()) throw TranslationError("unknown-constant", "no design for constant " + t.name());
    return it->second;
  }
};

}  // namespace

Translation translate(const Term& t, TranslationEnv& env) {
  if (!grounds::is_linear(t))
    throw TranslationError("nonlinear-term", "some →I in " + t.pretty() + " does not bind exactly one occurrence");
  if (!grounds::free_typed_vars(t).empty())
    throw TranslationError("unsupported-constructor", "only closed terms translate");
  const Formula type = type_in(t);
  check_type(type);
  Translator tr(env);
  const Address root = env.fresh();
  if (type.is(FK::Impl)) return {tr.function(t, child(root, 0), child(root, 1)), type};
  return {tr.value(t, root, std::nullopt), type};
}

ludics::CandidateVerdict check_translation(const Term& t, const Design& d, const TranslationEnv& env) {
  const Formula type = type_in(t);
  check_type(type);
  const Behaviour b = type_behaviour(type, d.base, env);
  return classify_candidate(d, b);
}

}  // namespace groundwork::translation
