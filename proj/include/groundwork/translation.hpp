#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "groundwork/behaviours.hpp"
#include "groundwork/term.hpp"

namespace groundwork::translation {

using grounds::Term;
using ludics::Address;
using ludics::Behaviour;
using ludics::Design;

struct TranslationError : std::runtime_error {
  // nonlinear-term, unsupported-constructor, diverged-application,
  // unknown-atom, unknown-constant, ill-typed
  std::string code;
  TranslationError(std::string c, const std::string& msg) : std::runtime_error(msg), code(std::move(c)) {}
};

struct TranslationEnv {
  // Generators of the behaviour interpreting each atom, on any base ⊢γ.
  // The absurdity 0 defaults to {†}.
  std::map<std::string, std::vector<Design>> atoms;
  // Designs for constants: base ⊢γ for atomic types, γ ⊢ δ for A → B.
  std::map<std::string, Design> constants;
  ludics::UniverseBounds bounds = default_bounds();
  // Unfolding depth of the copycat; 0 means bounds.max_depth.
  std::size_t fax_depth = 0;

  // Fresh root address, disjoint from every earlier one.
  Address fresh() { return Address{next_root++}; }
  std::uint32_t next_root = 0;

  static ludics::UniverseBounds default_bounds();
};

// The material, daimon-free members of b within its bounds.
std::vector<Design> free_incarnation(const Behaviour& b);

struct ArrowBehaviour {
  Behaviour domain;
  Behaviour codomain;
  // Designs on α ⊢ β sending every member of the domain's free
  // incarnation into the codomain's free incarnation.
  std::vector<Design> defining;
  // The domain's free incarnation is empty, so every design qualifies.
  bool vacuous = false;
  // Biorthogonal closure of `defining`.
  Behaviour behaviour;
};

// Both behaviours on one-address positive bases ⊢α and ⊢β with α, β disjoint.
ArrowBehaviour arrow(const Behaviour& a, const Behaviour& b, const ludics::UniverseBounds& bounds);

// Behaviour interpreting an atom (or 0) on ⊢ξ.
Behaviour atom_behaviour(const background::Formula& atom, const Address& xi, const TranslationEnv& env);
// Behaviour interpreting a type at the addresses of `base`: ⊢β for atoms,
// α ⊢ β for A → B.
Behaviour type_behaviour(const background::Formula& type, const ludics::Pitchfork& base, const TranslationEnv& env);

struct Translation {
  Design design;
  background::Formula type;
};

// Closed linear terms built from variables, constants, →I and →E whose
// types are atoms or implications between atoms. Functions land on
// k.0 ⊢ k.1 and values on ⊢k for a fresh root k.
Translation translate(const Term& t, TranslationEnv& env);

// Classification of d in the behaviour of t's type at d's base.
ludics::CandidateVerdict check_translation(const Term& t, const Design& d, const TranslationEnv& env);

}  // namespace groundwork::translation
