#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "groundwork/report.hpp"
#include "groundwork/sexpr.hpp"

namespace groundwork::focusing {

// Polarized linear formula in negation normal form. Immutable.
class PFormula {
 public:
  enum class Kind { PosAtom, NegAtom, Tensor, Plus, Par, With, One, Zero, Top, Bottom };

  static PFormula pos_atom(std::string name);
  static PFormula neg_atom(std::string name);
  static PFormula tensor(PFormula a, PFormula b);
  static PFormula plus(PFormula a, PFormula b);
  static PFormula par(PFormula a, PFormula b);
  static PFormula with(PFormula a, PFormula b);
  static PFormula one();
  static PFormula zero();
  static PFormula top();
  static PFormula bottom();

  PFormula();  // 1

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  bool positive() const;
  bool negative() const { return !positive(); }
  bool is_atom() const { return is(Kind::PosAtom) || is(Kind::NegAtom); }
  const std::string& name() const;
  const PFormula& left() const;
  const PFormula& right() const;

  PFormula dual() const;

  // "A ⅋ (B & C)", atoms of negative polarity as "A⊥".
  std::string pretty() const;
  // "(par (atom+ A) (with (atom+ B) (atom+ C)))"
  std::string to_sexpr() const;
  const std::string& key() const;

  friend bool operator==(const PFormula& a, const PFormula& b) { return a.key() == b.key(); }
  friend bool operator<(const PFormula& a, const PFormula& b) { return a.key() < b.key(); }

  struct Node;

 private:
  std::shared_ptr<const Node> node_;
  explicit PFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
};

// Accepts atom+, atom-, tensor, plus, par, with, one, zero, top, bottom and
// (dual f), which is pushed to the atoms at once.
PFormula parse_pformula(const SExpr& e);
PFormula parse_pformula(std::string_view text);

using Sequent = std::vector<PFormula>;

// "⊢ A, B"
std::string to_string(const Sequent& s);
// (sequent f ...) or a bare formula.
Sequent parse_sequent(const SExpr& e);
Sequent parse_sequent(std::string_view text);
bool same_multiset(const Sequent& a, const Sequent& b);

// Decomposition of a negative formula into the premises of its cluster:
// one list of positive formulas and negative atoms per premise. ⊤ has none.
std::vector<Sequent> negative_branches(const PFormula& f);
// The ways a positive formula can be decomposed: each a list of negative
// formulas and positive atoms. 0 has none.
std::vector<Sequent> positive_alternatives(const PFormula& f);

struct Derivation {
  enum class Rule { PositiveCluster, NegativeCluster, Axiom, Daimon };

  Sequent conclusion;
  Rule rule = Rule::Daimon;
  std::optional<PFormula> focus;  // clusters only
  // A positive cluster has one selection with one premise per entry, the
  // premise concluding that entry and a part of the context. A negative
  // cluster has one selection per branch with one premise each.
  std::vector<Sequent> selections;
  std::vector<Derivation> premises;

  bool contains_daimon() const;
  std::size_t size() const;
};

// Structural, with sequents compared as multisets.
bool operator==(const Derivation& a, const Derivation& b);
std::string to_string(Derivation::Rule r);
// Indented tree, conclusion first.
std::string render(const Derivation& d);

// Checks the cluster schemas: at most one non-atomic negative formula per
// sequent; negative clusters take every branch of their focus; positive
// clusters only act when no non-atomic negative is left and split the
// context among their premises; an atomic premise of a positive cluster is
// an axiom and a non-atomic one a negative cluster on that formula.
// Codes: bad-sequent, bad-focus, bad-selection, bad-premises,
// not-alternating, bad-axiom.
Report validate_derivation(const Derivation& d);

struct SearchResult {
  enum class Tag { Found, None, FuelExhausted };
  Tag tag = Tag::None;
  std::optional<Derivation> derivation;
};
std::string to_string(SearchResult::Tag t);

inline constexpr std::size_t kDefaultSearchFuel = 1'000'000;

// Two-phase search. A non-atomic negative formula is decomposed first; then
// an axiom is tried, then positive formulas left to right, alternatives in
// declaration order and context splits in a fixed order, backtracking on
// failure. In daimon mode a daimon-free derivation is still preferred;
// failing that, the search runs again with the daimon closing any sequent
// where a positive step is due and nothing else works.
// Throws std::invalid_argument when the sequent holds two non-atomic
// negative formulas.
SearchResult focused_search(const Sequent& s, std::size_t fuel = kDefaultSearchFuel, bool daimon_mode = false);

// A move (F, {F1, ..., Fn}); no focus stands for the daimon, a positive move.
struct Move {
  std::optional<PFormula> focus;
  Sequent choices;

  static Move daimon() { return {}; }
  bool is_daimon() const { return !focus; }
  bool positive() const { return !focus || focus->positive(); }
};
// Choices compare as multisets.
bool operator==(const Move& a, const Move& b);
bool operator<(const Move& a, const Move& b);
std::string to_string(const Move& m);

using Game = std::vector<Move>;
using Strategy = std::set<Game>;
std::string to_string(const Game& g);

// Codes: empty-game, not-alternating, unchosen-focus, repeated-focus,
// bad-choice, daimon-not-last.
Report validate_game(const Game& g);
// Every game valid, prefix-closed, first moves focusing formulas of s.
// Codes: empty-strategy, not-prefix-closed, foreign-focus and the game codes.
Report validate_strategy(const Strategy& st, const Sequent& s);

// One game per branch, each cluster read as a move, closed under prefixes.
// Axioms play no move, except a lone axiom, read as (X⊥, ∅).
Strategy derivation_to_strategy(const Derivation& d);

// Rebuilds the clusters, trying context splits in the search order.
// Codes: empty-strategy, not-prefix-closed, conflict, illegal-move,
// missing-branch, incomplete, unrealizable.
std::optional<Derivation> strategy_to_derivation(const Strategy& st, const Sequent& s, Report& report);

SExpr strategy_to_sexpr(const Strategy& st);
// (strategy (game (move F (F1 ...)) ... ) ...), (move daimon) for †.
Strategy parse_strategy(const SExpr& e);

}  // namespace groundwork::focusing
