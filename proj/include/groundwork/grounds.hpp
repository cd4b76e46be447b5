#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "groundwork/atomic_base.hpp"
#include "groundwork/term.hpp"

namespace groundwork::grounds {

using background::AtomicBase;
using background::AtomicDerivation;

// C: introductions only. C*: plus the five eliminations. C*+DS: plus
// disjunctive syllogism.
enum class Language { C, CStar, CStarDS };

// A non-primitive symbol added by the user, e.g. f : P ⊢ Q.
struct OpDecl {
  std::string name;
  std::vector<Formula> arg_types;
  Formula result;
};

// Defining equation lhs = rhs for a user symbol. Patterns may contain
// metavariables; a metavariable repeated on the left must match equal terms.
struct Equation {
  std::string name;
  Term lhs;
  Term rhs;
};

class Signature {
 public:
  explicit Signature(AtomicBase base = {}, Language language = Language::CStarDS);

  const AtomicBase& base() const { return base_; }
  Language language() const { return language_; }
  void set_language(Language l) { language_ = l; }

  // c^A for a closed atomic derivation of A. Throws std::invalid_argument
  // when the derivation does not check against the base.
  void register_constant(const std::string& name, AtomicDerivation derivation);
  const AtomicDerivation* constant(const std::string& name) const;
  const std::map<std::string, AtomicDerivation>& constants() const { return constants_; }

  void declare_op(OpDecl decl);
  const OpDecl* op(const std::string& name) const;
  const std::map<std::string, OpDecl>& ops() const { return ops_; }

  // Throws std::invalid_argument unless the left side is headed by a
  // declared user symbol and every metavariable on the right occurs on the
  // left.
  void add_equation(Equation eq);
  const std::vector<Equation>& equations() const { return equations_; }

 private:
  AtomicBase base_;
  Language language_;
  std::map<std::string, AtomicDerivation> constants_;
  std::map<std::string, OpDecl> ops_;
  std::vector<Equation> equations_;
};

// A1, ..., An ⊢ B together with the free individual variables.
struct GroundType {
  std::vector<TypedVar> assumptions;
  Formula succedent;
  std::set<std::string> free_individuals;

  std::vector<Formula> antecedents() const;
  bool closed() const { return assumptions.empty() && free_individuals.empty(); }
  std::string pretty() const;
};

class TypeError : public std::runtime_error {
 public:
  TypeError(const std::string& message, Term subterm, std::string expected = {}, std::string actual = {});
  const Term& subterm() const { return subterm_; }
  const std::string& expected() const { return expected_; }
  const std::string& actual() const { return actual_; }

 private:
  Term subterm_;
  std::string expected_;
  std::string actual_;
};

GroundType typecheck(const Term& t, const Signature& sig = Signature{});
// Succedent only.
Formula type_of(const Term& t, const Signature& sig = Signature{});

// Child indices from the root.
using Position = std::vector<std::size_t>;
std::string position_string(const Position& p);

struct Step {
  Term result;
  Position position;
  std::string equation;
};

// Rewrites the leftmost-outermost redex once.
std::optional<Step> reduce_step(const Term& t, const Signature& sig = Signature{});
// Root redex only.
std::optional<Step> reduce_root(const Term& t, const Signature& sig = Signature{});

struct TraceStep {
  Position position;
  std::string equation;
};

struct ReductionOutcome {
  enum class Tag { Canonical, Loop, FuelExhausted, Stuck };
  Tag tag;
  Term term;                // final term
  std::vector<Term> cycle;  // Loop only: first and last entries are equal
  std::vector<TraceStep> trace;
  std::vector<Term> history;  // every term visited, starting with the input
};

std::string to_string(ReductionOutcome::Tag tag);

constexpr std::size_t kDefaultReductionFuel = 10000;

ReductionOutcome normalize(const Term& t, const Signature& sig = Signature{},
                           std::size_t fuel = kDefaultReductionFuel);

struct GroundOptions {
  std::size_t fuel = kDefaultReductionFuel;
  // Closed instances tried per → or ∀ binder. Zero means structural check
  // only.
  std::size_t samples = 0;
  // Candidate arguments for → instances; picked by type, in order.
  std::vector<Term> pool;
};

struct GroundVerdict {
  enum class Tag { Yes, No, Unknown };
  Tag tag;
  std::string reason;
};

std::string to_string(GroundVerdict::Tag tag);

GroundVerdict denotes_ground(const Term& t, const Signature& sig, const GroundOptions& options = {});

struct Assignment {
  std::map<TypedVar, Term> typed;
  IndSubst individual;
};

class InstanceError : public std::runtime_error {
 public:
  InstanceError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Throws InstanceError with code missing-assignment or type-mismatch.
Term close_instance(const Term& t, const Assignment& assignment, const Signature& sig = Signature{});

// Every →I binds exactly one occurrence of its variable.
bool is_linear(const Term& t);

// Equation files:
//   (signature
//     (language C*+DS)
//     (op f (P) Q)
//     (constant g (deriv r (atom P)))
//     (equation e1 (op f ?x) (op f1 ?x ?x)))
// The atomic base, if any, comes first as a (base ...) form.
Signature parse_signature(const SExpr& e, AtomicBase base = {});
Language parse_language(const std::string& s);
std::string to_string(Language l);

}  // namespace groundwork::grounds
