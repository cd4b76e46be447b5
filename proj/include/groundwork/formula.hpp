#pragma once

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "groundwork/sexpr.hpp"

namespace groundwork::background {

// Individual term. Function symbols are not supported, so a term is either
// a variable or an individual constant.
struct IndTerm {
  enum class Kind { Var, Const };
  Kind kind = Kind::Var;
  std::string name;

  static IndTerm var(std::string n) { return {Kind::Var, std::move(n)}; }
  static IndTerm constant(std::string n) { return {Kind::Const, std::move(n)}; }
  bool is_var() const { return kind == Kind::Var; }

  auto operator<=>(const IndTerm&) const = default;
};

using IndSubst = std::map<std::string, IndTerm>;

// First-order background formula. Immutable; cheap to copy.
//
// Negation is not a constructor: `negation(A)` builds A -> 0.
class Formula {
 public:
  enum class Kind { Atom, Absurd, Conj, Disj, Impl, Forall, Exists };

  static Formula atom(std::string predicate, std::vector<IndTerm> args = {});
  static Formula absurd();
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula impl(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula negation(Formula a) { return impl(std::move(a), absurd()); }

  Formula();  // the absurd constant

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  bool is_atomic() const { return kind() == Kind::Atom; }

  const std::string& predicate() const;
  const std::vector<IndTerm>& args() const;
  const Formula& left() const;
  const Formula& right() const;
  // Quantifier binder and body.
  const std::string& bound_var() const;
  const Formula& body() const;

  std::set<std::string> free_vars() const;
  bool is_closed() const { return free_vars().empty(); }
  // Individual constants occurring anywhere.
  std::set<std::string> constants() const;
  // Predicate names with their arities.
  std::map<std::string, std::size_t> predicates() const;

  // Capture-avoiding simultaneous substitution of individual variables.
  Formula substitute(const IndSubst& s) const;
  Formula substitute(const std::string& var, const IndTerm& t) const {
    return substitute(IndSubst{{var, t}});
  }
  // Renames bound variables so none of them occurs in `avoid`.
  Formula rename_bound_apart(const std::set<std::string>& avoid) const;

  // Canonical key invariant under renaming of bound variables.
  const std::string& key() const;

  // Alpha-equivalence.
  friend bool operator==(const Formula& a, const Formula& b) { return a.key() == b.key(); }
  friend bool operator<(const Formula& a, const Formula& b) { return a.key() < b.key(); }

  // S-expression text, e.g. (impl (atom P x) (absurd)).
  std::string to_sexpr() const;
  // Human-readable infix text, e.g. P(x) → 0.
  std::string pretty() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n);
  static Formula make(std::shared_ptr<Node> n);
  std::shared_ptr<const Node> node_;
};

// Parsing needs to know which symbols are individual constants; all other
// symbols in argument position are variables.
struct FormulaSyntax {
  std::set<std::string> constants;
};

Formula parse_formula(const SExpr& e, const FormulaSyntax& syntax = {});
Formula parse_formula(const std::string& text, const FormulaSyntax& syntax = {});

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// First-order matching of `pattern` against `target`; variables of the
// pattern bind to terms of the target. Quantifier-free patterns only.
bool match_formula(const Formula& pattern, const Formula& target, IndSubst& subst);

}  // namespace groundwork::background
