#include <doctest.h>

#include <functional>

#include "designs.hpp"
#include "groundwork/grounds.hpp"
#include "groundwork/translation.hpp"

using namespace groundwork;
using namespace groundwork::ludics;
using namespace groundwork::translation;
using background::Formula;
using grounds::Term;
using grounds::TypedVar;
using fixtures::A;

namespace {

const Formula kZero = Formula::absurd();
const Formula kOne = Formula::atom("One");

TranslationEnv make_env() {
  TranslationEnv env;
  env.atoms["One"] = {atomic_bomb(A({}))};
  env.constants["w"] = daimon(positive_base({A({})}));
  env.constants["star"] = atomic_bomb(A({}));
  return env;
}

Term identity(const Formula& ty) {
  TypedVar x{"ξ", 0, ty};
  return Term::impl_i(x, Term::var(x));
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const TranslationError& e) {
    return e.code;
  }
  return "";
}

}  // namespace

TEST_CASE("free incarnations of the unit behaviours") {
  TranslationEnv env = make_env();
  CHECK(free_incarnation(atom_behaviour(kZero, A({0}), env)).empty());
  CHECK(free_incarnation(atom_behaviour(kOne, A({0}), env)) == std::vector<Design>{atomic_bomb(A({0}))});
}

TEST_CASE("copycat in 0 → 0") {
  TranslationEnv env = make_env();
  Translation t = translate(identity(kZero), env);
  const Address alpha = A({0, 0}), beta = A({0, 1});
  CHECK(t.design == build_fax(alpha, beta, 3, env.bounds.pool));
  CHECK(t.design.base == negative_base(alpha, {beta}));

  ArrowBehaviour zz = arrow(atom_behaviour(kZero, alpha, env), atom_behaviour(kZero, beta, env), env.bounds);
  CHECK(zz.vacuous);
  for (const auto& g : zz.defining) CHECK(g.base == negative_base(alpha, {beta}));
  CHECK(zz.behaviour.contains(t.design) == Verdict::Yes);

  // cut against the only material design of 0
  InteractionResult r = normalize(make_cutnet({t.design, daimon(positive_base({alpha}))}));
  REQUIRE(r.converged());
  CHECK(*r.result == daimon(positive_base({beta})));

  // Under the daimon-free reading of the domain, the only counters are the
  // daimon on α against anything on β, so the copycat uses nothing of
  // itself and is not material.
  CandidateVerdict v = check_translation(identity(kZero), t.design, env);
  CHECK(to_string(v) == "PseudoGround(not-material)");
  CHECK(incarnation_of(t.design, zz.behaviour) == Design{t.design.base, negative_node(alpha, {})});
}

TEST_CASE("copycat in 1 → 1") {
  TranslationEnv env = make_env();
  Translation t = translate(identity(kOne), env);
  const Address alpha = A({0, 0}), beta = A({0, 1});
  InteractionResult r = normalize(make_cutnet({t.design, atomic_bomb(alpha)}));
  REQUIRE(r.converged());
  CHECK(*r.result == atomic_bomb(beta));
  CHECK(to_string(classify_candidate(*r.result, atom_behaviour(kOne, beta, env))) == "Ground");

  ArrowBehaviour oo = arrow(atom_behaviour(kOne, alpha, env), atom_behaviour(kOne, beta, env), env.bounds);
  CHECK_FALSE(oo.vacuous);
  CHECK(oo.behaviour.contains(t.design) == Verdict::Yes);
  // only the ∅ answer is ever used
  Design inc = incarnation_of(t.design, oo.behaviour);
  CHECK(inc == Design{t.design.base, negative_node(alpha, {{{}, positive_node(beta, {}, {})}})});
}

TEST_CASE("applications") {
  TranslationEnv env = make_env();
  SUBCASE("identity on 0 applied to a witness") {
    Term app = Term::impl_e(identity(kZero), Term::constant("w", kZero));
    Translation t = translate(app, env);
    CHECK(t.type == kZero);
    CHECK(t.design.root->is(Node::Kind::Daimon));
    CHECK(to_string(check_translation(app, t.design, env)) == "PseudoGround(contains-daimon)");
    // the ground calculus reduces the same term to the witness, which lands
    // in the same behaviour
    auto out = grounds::normalize(app, grounds::Signature{});
    REQUIRE(out.tag == grounds::ReductionOutcome::Tag::Canonical);
    Translation direct = translate(out.term, env);
    CHECK(direct.design.root->is(Node::Kind::Daimon));
    CHECK(check_translation(out.term, direct.design, env) == check_translation(app, t.design, env));
  }
  SUBCASE("identity on 1 applied to the unit") {
    Term app = Term::impl_e(identity(kOne), Term::constant("star", kOne));
    Translation t = translate(app, env);
    REQUIRE(t.design.base.positive.size() == 1);
    const Address at = *t.design.base.positive.begin();
    CHECK(t.design == atomic_bomb(at));
    CHECK(to_string(check_translation(app, t.design, env)) == "Ground");
    CHECK(atom_behaviour(kOne, at, env).contains(t.design) == Verdict::Yes);
  }
  SUBCASE("application under a binder") {
    // →Iy^1 (→E(id, y)) behaves as the identity on 1
    TypedVar y{"y", 0, kOne};
    Term t = Term::impl_i(y, Term::impl_e(identity(kOne), Term::var(y)));
    Translation tr = translate(t, env);
    InteractionResult r = normalize(make_cutnet({tr.design, atomic_bomb(*tr.design.base.negative)}));
    REQUIRE(r.converged());
    CHECK(*r.result == atomic_bomb(*tr.design.base.positive.begin()));
  }
}

TEST_CASE("copycat acts as the identity on grounds") {
  TranslationEnv env = make_env();
  env.bounds.max_depth = 2;
  env.bounds.pool = powerset_pool(2);
  // an atom whose behaviour has deeper members than 1
  env.atoms["P"] = {Design{positive_base({A({})}), positive_node(A({}), {0}, {skunk(A({0})).root})}};
  Translation t = translate(identity(Formula::atom("P")), env);
  const Address alpha = *t.design.base.negative, beta = *t.design.base.positive.begin();
  Behaviour p = atom_behaviour(Formula::atom("P"), alpha, env);
  int grounds_seen = 0;
  for (const auto& d : p.members()) {
    if (classify_candidate(d, p).tag != CandidateVerdict::Tag::Ground) continue;
    ++grounds_seen;
    InteractionResult r = normalize(make_cutnet({t.design, d}));
    REQUIRE(r.converged());
    CHECK(*r.result == relocate(incarnation_of(d, p), alpha, beta));
  }
  CHECK(grounds_seen > 0);
}

TEST_CASE("translation errors") {
  TranslationEnv env = make_env();
  TypedVar x{"x", 0, kOne};
  CHECK(code_of([&] { translate(Term::impl_i(x, Term::constant("star", kOne)), env); }) == "nonlinear-term");
  CHECK(code_of([&] { translate(Term::conj_i(Term::constant("star", kOne), Term::constant("star", kOne)), env); }) ==
        "unsupported-constructor");
  CHECK(code_of([&] { translate(identity(Formula::impl(kOne, kOne)), env); }) == "unsupported-constructor");
  CHECK(code_of([&] { translate(Term::var(x), env); }) == "unsupported-constructor");
  CHECK(code_of([&] { translate(Term::constant("nope", kOne), env); }) == "unknown-constant");
  CHECK(code_of([&] { translate(identity(Formula::atom("Q")), env); }) == "");
  CHECK(code_of([&] { check_translation(identity(Formula::atom("Q")), Design{negative_base(A({0}), {A({1})}), negative_node(A({0}), {})}, env); }) == "unknown-atom");
  // a function that ignores its argument cannot answer
  env.constants["drop"] = Design{negative_base(A({0}), {A({1})}), negative_node(A({0}), {})};
  CHECK(code_of([&] {
    translate(Term::impl_e(Term::constant("drop", Formula::impl(kOne, kOne)), Term::constant("star", kOne)), env);
  }) == "diverged-application");
}

TEST_CASE("linearity gate on generated terms") {
  TranslationEnv env = make_env();
  // →I binding zero or two occurrences, nested in linear contexts
  const Term star = Term::constant("star", kOne);
  std::vector<Term> bad;
  for (int k = 0; k < 6; ++k) {
    TypedVar x{"x", k, kOne};
    Term body = k % 2 ? star : Term::impl_e(Term::impl_i(TypedVar{"z", k, kOne}, Term::var(x)), Term::var(x));
    Term t = Term::impl_i(x, body);
    for (int wrap = 0; wrap < k / 2; ++wrap) t = Term::impl_e(identity(Formula::impl(kOne, kOne)), t);
    bad.push_back(t);
  }
  for (const auto& t : bad) CHECK(code_of([&] { translate(t, env); }) == "nonlinear-term");
}

TEST_CASE("daimon and Fid candidates") {
  TranslationEnv env = make_env();
  Translation t = translate(identity(kOne), env);
  CHECK(to_string(check_translation(identity(kOne), Design{t.design.base, negative_node(A({0, 0}), {{{}, daimon_node()}})},
                                    env)) == "PseudoGround(contains-daimon)");
  CHECK(check_translation(identity(kOne), Design{t.design.base, negative_node(A({0, 0}), {{{}, fid_node()}})}, env)
            .tag == CandidateVerdict::Tag::NotInBehaviour);
}
