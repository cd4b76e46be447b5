#include "groundwork/atomic_base.hpp"

#include <sstream>
#include <stdexcept>

namespace groundwork::background {

Report validate_rule(const AtomicRule& rule) {
  Report report;
  std::set<std::string> premise_vars;
  for (std::size_t i = 0; i < rule.premises.size(); ++i) {
    const Formula& p = rule.premises[i];
    const std::string where = "premise " + std::to_string(i + 1);
    if (p.is(Formula::Kind::Absurd)) {
      report.push_back({"absurd-premise", "premises must differ from 0", where});
    } else if (!p.is_atomic()) {
      report.push_back({"non-atomic", p.pretty() + " is not atomic", where});
    }
    auto fv = p.free_vars();
    premise_vars.insert(fv.begin(), fv.end());
  }
  const Formula& c = rule.conclusion;
  if (!c.is_atomic() && !c.is(Formula::Kind::Absurd))
    report.push_back({"non-atomic", c.pretty() + " is not atomic", "conclusion"});
  for (const auto& v : c.free_vars()) {
    if (!premise_vars.count(v))
      report.push_back(
          {"unbound-variable", "'" + v + "' is free in the conclusion but in no premise", "conclusion"});
  }
  return report;
}

Report AtomicBase::check_signature(const Formula& f) const {
  Report report;
  for (const auto& c : f.constants())
    if (!constants_.count(c)) report.push_back({"undeclared-constant", "'" + c + "'", ""});
  for (const auto& [p, n] : f.predicates()) {
    auto it = relations_.find(p);
    if (it == relations_.end()) {
      report.push_back({"undeclared-relation", "'" + p + "'", ""});
    } else if (it->second != n) {
      report.push_back({"arity-mismatch",
                        "'" + p + "' declared with arity " + std::to_string(it->second) + ", used with " +
                            std::to_string(n),
                        ""});
    }
  }
  return report;
}

void AtomicBase::add_rule(AtomicRule rule) {
  Report report = validate_rule(rule);
  for (const auto& p : rule.premises) {
    auto r = check_signature(p);
    report.insert(report.end(), r.begin(), r.end());
  }
  auto r = check_signature(rule.conclusion);
  report.insert(report.end(), r.begin(), r.end());
  if (!report.empty()) {
    std::ostringstream msg;
    msg << "invalid rule '" << rule.name << "': " << report.front();
    throw std::invalid_argument(msg.str());
  }
  if (rule.name.empty()) rule.name = "r" + std::to_string(rules_.size() + 1);
  if (find_rule(rule.name)) throw std::invalid_argument("duplicate rule name '" + rule.name + "'");
  rules_.push_back(std::move(rule));
}

const AtomicRule* AtomicBase::find_rule(const std::string& name) const {
  for (const auto& r : rules_)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

// Matches conclusion and premises jointly so that premise-only variables
// are also pinned down by the children.
bool instantiates(const AtomicRule& rule, const AtomicDerivation& d) {
  if (rule.premises.size() != d.children.size()) return false;
  IndSubst subst;
  if (!match_formula(rule.conclusion, d.conclusion, subst)) return false;
  for (std::size_t i = 0; i < rule.premises.size(); ++i)
    if (!match_formula(rule.premises[i], d.children[i].conclusion, subst)) return false;
  return true;
}

void check_node(const AtomicDerivation& d, const AtomicBase& base, const std::string& path,
                Report& report) {
  if (!d.conclusion.is_closed())
    report.push_back({"open-formula", d.conclusion.pretty() + " has free variables", path});
  if (!d.rule.empty()) {
    const AtomicRule* rule = base.find_rule(d.rule);
    if (!rule) {
      report.push_back({"unknown-rule", "no rule named '" + d.rule + "'", path});
    } else if (d.children.empty() && !rule->premises.empty()) {
      report.push_back({"open-leaf", "leaf uses rule '" + d.rule + "' which has premises", path});
    } else if (!instantiates(*rule, d)) {
      report.push_back({"instantiation-mismatch",
                        "node does not instantiate rule '" + d.rule + "'", path});
    }
  } else {
    bool found = false;
    bool premise_rule_matches = false;
    for (const auto& rule : base.rules()) {
      if (instantiates(rule, d)) {
        found = true;
        break;
      }
      IndSubst s;
      if (!rule.premises.empty() && match_formula(rule.conclusion, d.conclusion, s))
        premise_rule_matches = true;
    }
    if (!found) {
      if (d.children.empty() && premise_rule_matches) {
        report.push_back({"open-leaf", d.conclusion.pretty() + " is an undischarged leaf", path});
      } else {
        report.push_back({"unknown-rule", "no base rule derives " + d.conclusion.pretty() +
                                              " from the given premises",
                          path});
      }
    }
  }
  for (std::size_t i = 0; i < d.children.size(); ++i)
    check_node(d.children[i], base, path + "/" + std::to_string(i + 1), report);
}

}  // namespace

Report check_atomic_derivation(const AtomicDerivation& d, const AtomicBase& base) {
  Report report;
  check_node(d, base, "root", report);
  return report;
}

AtomicRule parse_rule(const SExpr& e, const FormulaSyntax& syntax) {
  if (!e.is_form("rule")) e.fail("expected (rule ...)");
  AtomicRule rule;
  bool have_conclusion = false;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const SExpr& part = e[i];
    if (part.is_atom()) {
      rule.name = part.text();
    } else if (part.is_form("premises")) {
      for (std::size_t j = 1; j < part.size(); ++j) rule.premises.push_back(parse_formula(part[j], syntax));
    } else if (part.is_form("conclusion")) {
      if (part.size() != 2) part.fail("(conclusion F) takes one formula");
      rule.conclusion = parse_formula(part[1], syntax);
      have_conclusion = true;
    } else {
      part.fail("unexpected item in rule");
    }
  }
  if (!have_conclusion) e.fail("rule without conclusion");
  return rule;
}

AtomicBase parse_base(const SExpr& e) {
  if (!e.is_form("base")) e.fail("expected (base ...)");
  AtomicBase base;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const SExpr& part = e[i];
    if (part.is_form("constants")) {
      for (std::size_t j = 1; j < part.size(); ++j) base.declare_constant(part[j].text());
    } else if (part.is_form("relations")) {
      for (std::size_t j = 1; j < part.size(); ++j) {
        const SExpr& r = part[j];
        if (r.is_atom()) {
          base.declare_relation(r.text(), 0);
        } else {
          if (r.size() != 2) r.fail("relation declaration is (NAME ARITY)");
          base.declare_relation(r[0].text(), std::stoul(r[1].text()));
        }
      }
    } else if (part.is_form("rule")) {
      try {
        base.add_rule(parse_rule(part, base.syntax()));
      } catch (const std::invalid_argument& ex) {
        part.fail(ex.what());
      }
    } else {
      part.fail("unexpected item in base");
    }
  }
  return base;
}

AtomicDerivation parse_derivation(const SExpr& e, const FormulaSyntax& syntax) {
  if (!e.is_form("deriv")) e.fail("expected (deriv RULE FORMULA CHILD...)");
  if (e.size() < 3) e.fail("(deriv RULE FORMULA CHILD...) needs a rule and a formula");
  AtomicDerivation d;
  d.rule = e[1].text() == "_" ? "" : e[1].text();
  d.conclusion = parse_formula(e[2], syntax);
  for (std::size_t i = 3; i < e.size(); ++i) d.children.push_back(parse_derivation(e[i], syntax));
  return d;
}

std::string print_rule(const AtomicRule& rule) {
  std::string out = "(rule " + rule.name + " (premises";
  for (const auto& p : rule.premises) out += " " + p.to_sexpr();
  return out + ") (conclusion " + rule.conclusion.to_sexpr() + "))";
}

std::string print_base(const AtomicBase& base) {
  std::string out = "(base\n  (constants";
  for (const auto& c : base.constants()) out += " " + c;
  out += ")\n  (relations";
  for (const auto& [r, n] : base.relations()) out += " (" + r + " " + std::to_string(n) + ")";
  out += ")";
  for (const auto& rule : base.rules()) out += "\n  " + print_rule(rule);
  return out + ")";
}

std::string print_derivation(const AtomicDerivation& d) {
  std::string out = "(deriv " + (d.rule.empty() ? std::string("_") : d.rule) + " " + d.conclusion.to_sexpr();
  for (const auto& c : d.children) out += " " + print_derivation(c);
  return out + ")";
}

}  // namespace groundwork::background
