#pragma once

#include <random>
#include <string>

#include "groundwork/focusing.hpp"

namespace fixtures {

using groundwork::focusing::PFormula;
using groundwork::focusing::Sequent;

inline PFormula pa(const std::string& n) { return PFormula::pos_atom(n); }
inline PFormula na(const std::string& n) { return PFormula::neg_atom(n); }

// A ⅋ (B & C) and (A⊥ ⊗ B⊥) ⊕ (A⊥ ⊗ C⊥).
inline PFormula worked_negative() { return PFormula::par(pa("A"), PFormula::with(pa("B"), pa("C"))); }
inline PFormula worked_positive() {
  return PFormula::plus(PFormula::tensor(na("A"), na("B")), PFormula::tensor(na("A"), na("C")));
}
inline Sequent worked_sequent() { return {worked_negative(), worked_positive()}; }

class PolarGen {
 public:
  explicit PolarGen(unsigned seed) : rng_(seed) {}

  // Over atoms drawn from `atoms` names, both polarities.
  PFormula formula(int depth, int atoms) {
    const int pick = static_cast<int>(rng_() % (depth > 0 ? 8 : 2));
    const std::string n(1, static_cast<char>('A' + rng_() % atoms));
    switch (pick) {
      case 0: return pa(n);
      case 1: return na(n);
      case 2: return PFormula::tensor(formula(depth - 1, atoms), formula(depth - 1, atoms));
      case 3: return PFormula::plus(formula(depth - 1, atoms), formula(depth - 1, atoms));
      case 4: return PFormula::par(formula(depth - 1, atoms), formula(depth - 1, atoms));
      case 5: return PFormula::with(formula(depth - 1, atoms), formula(depth - 1, atoms));
      case 6: return rng_() % 2 ? PFormula::one() : PFormula::bottom();
      default: return rng_() % 2 ? PFormula::top() : PFormula::zero();
    }
  }

  // Each atom occurrence with a name of its own.
  PFormula linear_formula(int depth) {
    const int pick = static_cast<int>(rng_() % (depth > 0 ? 6 : 2));
    switch (pick) {
      case 0: return pa(fresh());
      case 1: return na(fresh());
      case 2: return PFormula::tensor(linear_formula(depth - 1), linear_formula(depth - 1));
      case 3: return PFormula::plus(linear_formula(depth - 1), linear_formula(depth - 1));
      case 4: return PFormula::par(linear_formula(depth - 1), linear_formula(depth - 1));
      default: return PFormula::with(linear_formula(depth - 1), linear_formula(depth - 1));
    }
  }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
  int next_ = 0;

  std::string fresh() { return "a" + std::to_string(next_++); }
};

}  // namespace fixtures
