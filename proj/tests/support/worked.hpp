#pragma once

#include "groundwork/grounds.hpp"

namespace fixtures {

using groundwork::background::Formula;
using groundwork::grounds::Term;
using groundwork::grounds::TypedVar;

inline Formula A() { return Formula::atom("A"); }
inline Formula AA() { return Formula::impl(A(), A()); }

// →Iξ^A(ξ^A)
inline Term identity_A() {
  TypedVar x{"ξ", 0, A()};
  return Term::impl_i(x, Term::var(x));
}

// →Iξ1^{A→A}(∨E ξ2^{A→A} ξ^0.(∨I[A→A ⊢ (A→A)∨0](ξ1), ξ2, 0_{A→A}(ξ^0)))
inline Term worked_function() {
  TypedVar x1{"ξ", 1, AA()};
  TypedVar x2{"ξ", 2, AA()};
  TypedVar x0{"ξ", 0, Formula::absurd()};
  Formula d = Formula::disj(AA(), Formula::absurd());
  Term inner = Term::disj_e(x2, x0, Term::disj_i(1, d, Term::var(x1)), Term::var(x2),
                            Term::exploder(AA(), Term::var(x0)));
  return Term::impl_i(x1, inner);
}

inline Term worked_term() { return Term::impl_e(worked_function(), identity_A()); }

inline TypedVar xi3() { return TypedVar{"ξ", 3, AA()}; }

inline Term worked_open_term() { return Term::impl_e(worked_function(), Term::var(xi3())); }

}  // namespace fixtures
