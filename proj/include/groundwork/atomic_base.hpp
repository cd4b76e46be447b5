#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "groundwork/formula.hpp"
#include "groundwork/report.hpp"

namespace groundwork::background {

// A Post-system rule  A1 ... An / B  over atomic formulas.
struct AtomicRule {
  std::string name;
  std::vector<Formula> premises;
  Formula conclusion;
};

// Checks the two well-formedness conditions: every formula is atomic with
// no absurd premise, and every variable free in the conclusion is free in
// some premise. An absurd conclusion is accepted.
Report validate_rule(const AtomicRule& rule);

// Individual and relational constants plus atomic rules.
class AtomicBase {
 public:
  AtomicBase() = default;

  void declare_constant(const std::string& name) { constants_.insert(name); }
  void declare_relation(const std::string& name, std::size_t arity) { relations_[name] = arity; }
  // Throws std::invalid_argument when the rule is malformed or mentions
  // undeclared constants.
  void add_rule(AtomicRule rule);

  const std::set<std::string>& constants() const { return constants_; }
  const std::map<std::string, std::size_t>& relations() const { return relations_; }
  const std::vector<AtomicRule>& rules() const { return rules_; }
  const AtomicRule* find_rule(const std::string& name) const;

  // Formula mentions only declared constants and relations with matching
  // arity. The absurd constant is always available.
  Report check_signature(const Formula& f) const;

  FormulaSyntax syntax() const { return FormulaSyntax{constants_}; }

 private:
  std::set<std::string> constants_;
  std::map<std::string, std::size_t> relations_;
  std::vector<AtomicRule> rules_;
};

// An atomic derivation tree. `rule` names the base rule applied at the node;
// an empty name means "any rule that fits".
struct AtomicDerivation {
  Formula conclusion;
  std::string rule;
  std::vector<AtomicDerivation> children;
};

// ok iff every node instantiates a base rule and the derivation is closed.
// Violation codes: unknown-rule, open-leaf, instantiation-mismatch,
// open-formula.
Report check_atomic_derivation(const AtomicDerivation& d, const AtomicBase& base);

// Text formats.
//   (base (constants a b) (relations (P 1) (Q 1))
//         (rule r (premises (atom P x)) (conclusion (atom Q x))))
//   (deriv r (atom Q a) (deriv s (atom P a)))
AtomicBase parse_base(const SExpr& e);
AtomicRule parse_rule(const SExpr& e, const FormulaSyntax& syntax);
AtomicDerivation parse_derivation(const SExpr& e, const FormulaSyntax& syntax);
std::string print_base(const AtomicBase& base);
std::string print_rule(const AtomicRule& rule);
std::string print_derivation(const AtomicDerivation& d);

}  // namespace groundwork::background
