#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "groundwork/formula.hpp"

namespace groundwork::grounds {

using background::Formula;
using background::IndSubst;
using background::IndTerm;

// A typed variable xi_i^A. Identity is the triple (name, index, type).
struct TypedVar {
  std::string name;
  int index = 0;
  Formula type;

  friend bool operator==(const TypedVar& a, const TypedVar& b) {
    return a.name == b.name && a.index == b.index && a.type == b.type;
  }
  friend bool operator<(const TypedVar& a, const TypedVar& b) {
    return std::tie(a.name, a.index, a.type) < std::tie(b.name, b.index, b.type);
  }
  std::string to_sexpr() const;
  std::string pretty() const;
};

// Term of a language of grounds. Immutable and cheap to copy.
//
// Introduction forms (and the explosion symbol) are the primitive
// operations; everything else is defined by equations. `Meta` only appears
// in equation patterns.
class Term {
 public:
  enum class Kind {
    Var,
    Const,
    ConjI,
    DisjI,
    ImplI,
    ForallI,
    ExistsI,
    Exploder,
    ConjE,
    DisjE,
    ImplE,
    ForallE,
    ExistsE,
    DS,
    UserOp,
    Meta
  };

  static Term var(TypedVar v);
  static Term var(std::string name, Formula type, int index = 0) {
    return var(TypedVar{std::move(name), index, std::move(type)});
  }
  static Term constant(std::string name, Formula type);
  static Term conj_i(Term t, Term u);
  // side is 1 or 2; `disjunction` is the full target type A1 ∨ A2.
  static Term disj_i(int side, Formula disjunction, Term t);
  static Term impl_i(TypedVar bound, Term body);
  static Term forall_i(std::string var, Term body);
  static Term exists_i(IndTerm witness, Formula existential, Term t);
  static Term exploder(Formula target, Term t);
  static Term conj_e(int side, Term t);
  static Term disj_e(TypedVar left, TypedVar right, Term t, Term u, Term v);
  static Term impl_e(Term fn, Term arg);
  static Term forall_e(IndTerm witness, Term t);
  static Term exists_e(std::string var, TypedVar bound, Term t, Term u);
  static Term ds(Term t, Term u);
  static Term user_op(std::string name, std::vector<Term> args);
  static Term meta(std::string name);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  // Introductions, explosion, constants and variables.
  bool is_primitive_head() const;

  // Accessors; which ones are meaningful depends on kind().
  const TypedVar& var() const;        // Var, ImplI binder, DisjE left, ExistsE binder
  const TypedVar& var2() const;       // DisjE right binder
  const std::string& name() const;    // Const, UserOp, Meta, ForallI/ExistsE individual binder
  const Formula& annotation() const;  // Const type, DisjI/ExistsI/Exploder annotation
  int side() const;                   // DisjI, ConjE
  const IndTerm& witness() const;     // ExistsI, ForallE
  const std::vector<Term>& args() const;
  const Term& arg(std::size_t i) const { return args().at(i); }

  // Same kind and payload, different immediate subterms.
  Term with_args(std::vector<Term> args) const;

  // Canonical s-expression; also the syntactic identity used for equality
  // and loop detection.
  const std::string& key() const;
  std::string to_sexpr() const { return key(); }
  // Math rendering, e.g. →Iξ^A(ξ^A).
  std::string pretty() const;

  std::size_t size() const;

  friend bool operator==(const Term& a, const Term& b) { return a.key() == b.key(); }
  friend bool operator<(const Term& a, const Term& b) { return a.key() < b.key(); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n);
  static Term make(std::shared_ptr<Node> n);
  std::shared_ptr<const Node> node_;
};

// Free typed variables, in order of first occurrence.
std::vector<TypedVar> free_typed_vars(const Term& t);
// Free individual variables, including those occurring in type annotations.
std::set<std::string> free_ind_vars(const Term& t);
std::set<std::string> metas(const Term& t);

struct Substitution {
  std::map<TypedVar, Term> typed;
  IndSubst individual;
  bool empty() const { return typed.empty() && individual.empty(); }
};

// Capture-avoiding simultaneous substitution. Bound variables are renamed
// only when a substituted term would otherwise be captured.
Term substitute(const Term& t, const Substitution& s);

// Syntax for individual constants is shared with formulas.
Term parse_term(const SExpr& e, const background::FormulaSyntax& syntax = {});
Term parse_term(const std::string& text, const background::FormulaSyntax& syntax = {});
TypedVar parse_typed_var(const SExpr& e, const background::FormulaSyntax& syntax = {});

}  // namespace groundwork::grounds
